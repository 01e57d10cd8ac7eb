#include "polysum/json_io.hpp"

#include "polysum/errors.hpp"

#include <fstream>
#include <sstream>

namespace polysum {

Json to_json(const Rational& q) { return q.str(); }

Json to_json(const Vec& v) {
    Json a = Json::array();
    for (const auto& q : v) a.push_back(q.str());
    return a;
}

Json to_json(const Matrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(to_json(m.row(i)));
    return rows;
}

Json to_json(const System& s) {
    return Json{{"name", s.name}, {"A", to_json(s.a)}, {"b", to_json(s.b)}};
}

Json to_json(const TwoSum& t) {
    return Json{{"A", to_json(t.a_block)},
                {"a_row", to_json(t.a_row)},
                {"b_row", to_json(t.b_row)},
                {"B", to_json(t.b_block)},
                {"c_A", to_json(t.c_a)},
                {"c_shared", t.c_shared.str()},
                {"c_B", to_json(t.c_b)},
                {"split", Json::array({t.split_ca.str(), t.split_cb.str()})}};
}

Json to_json(const ThreeSum& t) {
    return Json{{"A", to_json(t.a_block)},
                {"a1_row", to_json(t.a1_row)},
                {"a2_row", to_json(t.a2_row)},
                {"b1_row", to_json(t.b1_row)},
                {"b2_row", to_json(t.b2_row)},
                {"B", to_json(t.b_block)},
                {"c_A", to_json(t.c_a)},
                {"c1_shared", t.c1_shared.str()},
                {"c2_shared", t.c2_shared.str()},
                {"c_B", to_json(t.c_b)},
                {"splits", Json::array({Json::array({t.split_ca1.str(), t.split_cb1.str()}),
                                        Json::array({t.split_ca2.str(), t.split_cb2.str()})})}};
}

Json to_json(const Walk& w) {
    Json verts = Json::array();
    for (const auto& v : w.verts) verts.push_back(to_json(v.coords));
    Json log = Json::array();
    for (std::size_t i = 0; i < w.tags.size(); ++i)
        log.push_back(Json{{"step", i + 1},
                           {"rule", rule_name(w.tags[i].rule)},
                           {"lemma", w.tags[i].lemma}});
    return Json{{"vertices", verts}, {"budget_log", log}};
}

Json to_json(const BandInterval& b) {
    Json supp = Json::array();
    for (auto s : b.support) supp.push_back(s);
    return Json{{"lo", b.lo.str()}, {"hi", b.hi.str()}, {"support", supp}};
}

Json to_json(const BandPolygon& p) {
    Json verts = Json::array();
    for (const auto& [x, y] : p.vertices) verts.push_back(Json{x.str(), y.str()});
    Json supp = Json::array();
    for (auto s : p.support) supp.push_back(s);
    return Json{{"vertices", verts}, {"support", supp}};
}

Json vertices_json(const std::string& name, const std::vector<Vertex>& verts) {
    Json arr = Json::array();
    for (const auto& v : verts) arr.push_back(to_json(v.coords));
    return Json{{"name", name}, {"vertices", arr}};
}

Json graph_json(const std::string& name, const Graph& g) {
    Json j = vertices_json(name, g.verts);
    Json edges = Json::array();
    for (auto [a, b] : g.edges) edges.push_back(Json{a, b});
    j["edges"] = edges;
    return j;
}

Rational rat_from_json(const Json& j) {
    if (!j.is_string()) throw ParseError("expected a rational string, got " + j.dump());
    auto r = Rational::parse(j.get<std::string>());
    if (!r) throw ParseError("malformed rational: \"" + j.get<std::string>() + "\"");
    return *r;
}

Vec vec_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected an array of rationals, got " + j.dump());
    Vec v;
    v.reserve(j.size());
    for (const auto& e : j) v.push_back(rat_from_json(e));
    return v;
}

Matrix matrix_from_json(const Json& j) {
    if (!j.is_array()) throw ParseError("expected a matrix (array of rows), got " + j.dump());
    std::size_t rows = j.size();
    std::size_t cols = rows ? j[0].size() : 0;
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        Vec r = vec_from_json(j[i]);
        if (r.size() != cols) throw ParseError("ragged matrix row " + std::to_string(i));
        m.set_row(i, r);
    }
    return m;
}

namespace {

const Json& field(const Json& j, const char* key) {
    auto it = j.find(key);
    if (it == j.end()) throw ParseError(std::string("missing field \"") + key + "\"");
    return *it;
}

} // namespace

System system_from_json(const Json& j) {
    Matrix a = matrix_from_json(field(j, "A"));
    Vec b = vec_from_json(field(j, "b"));
    std::string name = j.value("name", "");
    if (a.rows() != b.size())
        throw ParseError("system: rhs length does not match the row count");
    return System(std::move(a), std::move(b), std::move(name));
}

TwoSum twosum_from_json(const Json& j) {
    TwoSum t;
    t.a_block = matrix_from_json(field(j, "A"));
    t.a_row = vec_from_json(field(j, "a_row"));
    t.b_row = vec_from_json(field(j, "b_row"));
    t.b_block = matrix_from_json(field(j, "B"));
    t.c_a = vec_from_json(field(j, "c_A"));
    t.c_shared = rat_from_json(field(j, "c_shared"));
    t.c_b = vec_from_json(field(j, "c_B"));
    const Json& sp = field(j, "split");
    if (!sp.is_array() || sp.size() != 2) throw ParseError("split must be a pair");
    t.split_ca = rat_from_json(sp[0]);
    t.split_cb = rat_from_json(sp[1]);
    if (t.a_block.rows() == 0) t.a_block = Matrix(0, t.a_row.size());
    if (t.b_block.rows() == 0) t.b_block = Matrix(0, t.b_row.size());
    t.validate();
    return t;
}

ThreeSum threesum_from_json(const Json& j) {
    ThreeSum t;
    t.a_block = matrix_from_json(field(j, "A"));
    t.a1_row = vec_from_json(field(j, "a1_row"));
    t.a2_row = vec_from_json(field(j, "a2_row"));
    t.b1_row = vec_from_json(field(j, "b1_row"));
    t.b2_row = vec_from_json(field(j, "b2_row"));
    t.b_block = matrix_from_json(field(j, "B"));
    t.c_a = vec_from_json(field(j, "c_A"));
    t.c1_shared = rat_from_json(field(j, "c1_shared"));
    t.c2_shared = rat_from_json(field(j, "c2_shared"));
    t.c_b = vec_from_json(field(j, "c_B"));
    const Json& sp = field(j, "splits");
    if (!sp.is_array() || sp.size() != 2 || !sp[0].is_array() || sp[0].size() != 2 ||
        !sp[1].is_array() || sp[1].size() != 2)
        throw ParseError("splits must be two pairs");
    t.split_ca1 = rat_from_json(sp[0][0]);
    t.split_cb1 = rat_from_json(sp[0][1]);
    t.split_ca2 = rat_from_json(sp[1][0]);
    t.split_cb2 = rat_from_json(sp[1][1]);
    if (t.a_block.rows() == 0) t.a_block = Matrix(0, t.a1_row.size());
    if (t.b_block.rows() == 0) t.b_block = Matrix(0, t.b1_row.size());
    t.validate();
    return t;
}

Walk walk_from_json(const Json& j) {
    Walk w;
    for (const auto& v : field(j, "vertices")) w.verts.push_back(Vertex(vec_from_json(v)));
    for (const auto& e : field(j, "budget_log")) {
        std::string rule = field(e, "rule").get<std::string>();
        StepRule r;
        if (rule == "lift")
            r = StepRule::Lift;
        else if (rule == "jump")
            r = StepRule::Jump;
        else if (rule == "same_x")
            r = StepRule::SameX;
        else if (rule == "escape")
            r = StepRule::Escape;
        else
            throw ParseError("unknown walk rule \"" + rule + "\"");
        w.tags.push_back({r, field(e, "lemma").get<std::string>()});
    }
    if (!w.verts.empty() && w.tags.size() != w.verts.size() - 1)
        throw ParseError("budget_log length does not match the vertex count");
    return w;
}

FileKind detect_kind(const Json& j) {
    if (j.contains("budget_log")) return FileKind::WalkFile;
    if (j.contains("a1_row")) return FileKind::ThreeSumFile;
    if (j.contains("a_row")) return FileKind::TwoSumFile;
    if (j.contains("A") && j.contains("b")) return FileKind::SystemFile;
    throw ParseError("unrecognized file schema");
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open file: " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write file: " + path);
    out << content;
}

Json to_json(const WalkDocument& doc) {
    Json j = to_json(doc.walk);
    j["method"] = doc.method;
    j["from"] = doc.from;
    j["to"] = doc.to;
    j["instance"] = doc.instance;
    return j;
}

WalkDocument walk_document_from_json(const Json& j) {
    WalkDocument doc;
    doc.method = field(j, "method").get<std::string>();
    doc.from = field(j, "from").get<std::size_t>();
    doc.to = field(j, "to").get<std::size_t>();
    doc.instance = field(j, "instance");
    doc.walk = walk_from_json(j);
    return doc;
}

std::string fnv1a64_hex(const std::string& data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex;
    for (int i = 15; i >= 0; --i) os << ((h >> (4 * i)) & 0xF);
    return os.str();
}

std::string instance_hash(const Json& j) { return fnv1a64_hex(j.dump()); }

} // namespace polysum

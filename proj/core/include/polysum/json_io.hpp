#pragma once

#include "polysum/system.hpp"
#include "polysum/threesum.hpp"
#include "polysum/twosum.hpp"

#include <json.hpp>

#include <string>

namespace polysum {

using Json = nlohmann::json;

// File schemas (all rationals as "p/q" strings):
//   system:  {"name": str, "A": [[r]], "b": [r]}
//   2-sum:   {"A", "a_row", "b_row", "B", "c_A", "c_shared", "c_B",
//             "split": [r, r]}
//   3-sum:   {"A", "a1_row", "a2_row", "b1_row", "b2_row", "B", "c_A",
//             "c1_shared", "c2_shared", "c_B", "splits": [[r,r],[r,r]]}
//   walk:    {"method", "from", "to", "instance", "vertices",
//             "budget_log": [{"step","rule","lemma"}]}

Json to_json(const Rational& q);
Json to_json(const Vec& v);
Json to_json(const Matrix& m);
Json to_json(const System& s);
Json to_json(const TwoSum& t);
Json to_json(const ThreeSum& t);
Json to_json(const Walk& w);
Json to_json(const BandInterval& b);
Json to_json(const BandPolygon& p);

Json vertices_json(const std::string& name, const std::vector<Vertex>& verts);
Json graph_json(const std::string& name, const Graph& g);

Rational rat_from_json(const Json& j);
Vec vec_from_json(const Json& j);
Matrix matrix_from_json(const Json& j);
System system_from_json(const Json& j);
TwoSum twosum_from_json(const Json& j);
ThreeSum threesum_from_json(const Json& j);
Walk walk_from_json(const Json& j);

enum class FileKind { SystemFile, TwoSumFile, ThreeSumFile, WalkFile };

/// Detects the schema by its fields.
FileKind detect_kind(const Json& j);

Json load_json_file(const std::string& path); ///< ParseError with location on failure
void write_text_file(const std::string& path, const std::string& content);

/// Self-contained walk document: the instance is embedded so a walk can
/// be replayed without its source files.
struct WalkDocument {
    std::string method; ///< "oracle" | "theorem" | "unit"
    Json instance;
    std::size_t from = 0, to = 0;
    Walk walk;
};

Json to_json(const WalkDocument& doc);
WalkDocument walk_document_from_json(const Json& j);

std::string fnv1a64_hex(const std::string& data);
/// Content hash of an instance: FNV-1a over its canonical serialization.
std::string instance_hash(const Json& j);

} // namespace polysum

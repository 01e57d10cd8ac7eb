// Command-line front end: vertex enumeration, diameters, 2-/3-sum
// construction and decomposition, constructive walks, bands, instance
// generation, and lemma verification over JSON instance files.
//
// Exit codes: 0 success, 1 check failure, 2 usage or contract error.

#include "polysum/errors.hpp"
#include "polysum/generator.hpp"
#include "polysum/json_io.hpp"
#include "polysum/oracle.hpp"
#include "polysum/verify.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>

using namespace polysum;

namespace {

struct Global {
    std::size_t cap = kDefaultEnumCap;
    bool quiet = false;
    bool json = false;

    void say(const std::string& s) const {
        if (!quiet) std::cout << s << "\n";
    }
    void emit(const Json& j, const std::string& plain) const {
        if (json)
            std::cout << j.dump(2) << "\n";
        else
            say(plain);
    }
};

void write_or_print(const std::optional<std::string>& out, const Json& j) {
    if (out)
        write_text_file(*out, j.dump(2) + "\n");
    else
        std::cout << j.dump(2) << "\n";
}

System load_system(const std::string& path) {
    Json j = load_json_file(path);
    if (detect_kind(j) != FileKind::SystemFile)
        throw ParseError(path + ": expected a standard-form system file");
    return system_from_json(j);
}

// Any instance file exposes a standard-form system for enumeration.
System load_any_system(const std::string& path) {
    Json j = load_json_file(path);
    switch (detect_kind(j)) {
        case FileKind::SystemFile: return system_from_json(j);
        case FileKind::TwoSumFile: return twosum_from_json(j).assembled();
        case FileKind::ThreeSumFile: return threesum_from_json(j).assembled();
        default: throw ParseError(path + ": walk files carry no system to enumerate");
    }
}

int run(int argc, char** argv) {
    CLI::App app{"exact toolkit for 2-sum and 3-sum polyhedra and their diameters"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand
    Global g;
    app.add_option("--cap", g.cap, "column cap for vertex enumeration")->capture_default_str();
    app.add_flag("--quiet", g.quiet, "suppress plain-text output");
    app.add_flag("--json", g.json, "print machine-readable output");

    std::string vfile;
    bool vgraph = false;
    auto* vcmd = app.add_subcommand("vertices", "enumerate the vertices of an instance");
    vcmd->add_option("file", vfile)->required();
    vcmd->add_flag("--graph", vgraph, "also export the 1-skeleton edges");

    std::string dfile;
    long long dexpect = -1;
    auto* dcmd = app.add_subcommand("diameter", "combinatorial diameter by brute force");
    dcmd->add_option("file", dfile)->required();
    dcmd->add_option("--expect", dexpect, "fail unless the diameter equals this value");

    std::string tp, tq;
    std::optional<std::string> tout;
    auto* tcmd = app.add_subcommand(
        "twosum", "2-sum of P (distinguished last column) and Q (distinguished first row)");
    tcmd->add_option("P", tp)->required();
    tcmd->add_option("Q", tq)->required();
    tcmd->add_option("-o,--output", tout);

    std::string hp, hq;
    std::optional<std::string> hout;
    auto* hcmd = app.add_subcommand("threesum",
                                    "3-sum of P and Q given in the duplicated-column shapes");
    hcmd->add_option("P", hp)->required();
    hcmd->add_option("Q", hq)->required();
    hcmd->add_option("-o,--output", hout);

    std::string dcfile;
    std::optional<std::string> dcout;
    auto* dccmd = app.add_subcommand("decompose", "standard-form summands of a 2-sum instance");
    dccmd->add_option("file", dcfile)->required();
    dccmd->add_option("-o,--output", dcout, "write <prefix>.p.json and <prefix>.q.json");

    std::string wfile, wmethod = "theorem";
    std::size_t wfrom = 0, wto = 0;
    std::optional<std::string> wout;
    auto* wcmd = app.add_subcommand("walk", "construct a walk between two vertices");
    wcmd->add_option("file", wfile)->required();
    wcmd->add_option("--from", wfrom)->required();
    wcmd->add_option("--to", wto)->required();
    wcmd->add_option("--method", wmethod)->check(CLI::IsMember({"oracle", "theorem", "unit"}));
    wcmd->add_option("-o,--output", wout);

    std::string bfile;
    std::size_t bvertex = 0;
    auto* bcmd =
        app.add_subcommand("band", "band of a vertex: interval (2-sum) or polygon (3-sum)");
    bcmd->add_option("file", bfile)->required();
    bcmd->add_option("--vertex", bvertex)->required();

    std::string gkind = "two_sum";
    std::uint64_t gseed = 0;
    std::optional<std::string> gout;
    bool gsimple = true, gboth = false;
    auto* gcmd = app.add_subcommand("gen", "deterministic random instance");
    gcmd->add_option("--kind", gkind)
        ->check(CLI::IsMember({"two_sum", "three_sum", "unit_column", "product"}));
    gcmd->add_option("--seed", gseed)->required();
    gcmd->add_option("-o,--output", gout);
    gcmd->add_flag("--simple,!--no-simple", gsimple, "require a simple instance");
    gcmd->add_flag("--both-categories", gboth, "require both vertex categories");

    std::string vefile, vechecks = "all";
    std::optional<std::string> vereport, vecsv;
    auto* vecmd = app.add_subcommand("verify", "run lemma suites against the oracle");
    vecmd->add_option("file", vefile)->required();
    vecmd->add_option("--checks", vechecks, "all or a comma-separated list of check ids");
    vecmd->add_option("--report", vereport, "write a JSON-lines report");
    vecmd->add_option("--csv", vecsv, "write a summary CSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2; // usage errors exit 2; --help exits 0
    }

    if (*vcmd) {
        System s = load_any_system(vfile);
        Json out;
        std::size_t count;
        if (vgraph) {
            Graph gr = build_graph(s, g.cap);
            count = gr.verts.size();
            out = graph_json(s.name, gr);
        } else {
            auto verts = enumerate_vertices(s, g.cap);
            count = verts.size();
            out = vertices_json(s.name, verts);
        }
        if (g.json)
            std::cout << out.dump(2) << "\n";
        else
            g.say(std::to_string(count) + " vertices\n" + out.dump(2));
        return 0;
    }

    if (*dcmd) {
        System s = load_any_system(dfile);
        DiameterResult d = diameter(s, g.cap);
        if (!d.connected) {
            g.say("diameter: infinite (disconnected skeleton)");
            return dexpect >= 0 ? 1 : 0;
        }
        g.emit(Json{{"diameter", d.value}}, "diameter: " + std::to_string(d.value));
        if (dexpect >= 0 && d.value != static_cast<std::size_t>(dexpect)) {
            std::cerr << "expected " << dexpect << ", got " << d.value << "\n";
            return 1;
        }
        return 0;
    }

    if (*tcmd) {
        TwoSum t = poly_two_sum(load_system(tp), load_system(tq));
        write_or_print(tout, to_json(t));
        return 0;
    }

    if (*hcmd) {
        ThreeSum t = poly_three_sum(load_system(hp), load_system(hq));
        write_or_print(hout, to_json(t));
        return 0;
    }

    if (*dccmd) {
        Json j = load_json_file(dcfile);
        if (detect_kind(j) != FileKind::TwoSumFile)
            throw ParseError(dcfile + ": decompose expects a 2-sum instance file");
        auto [p, q] = decompose(twosum_from_json(j));
        if (dcout) {
            write_text_file(*dcout + ".p.json", to_json(p).dump(2) + "\n");
            write_text_file(*dcout + ".q.json", to_json(q).dump(2) + "\n");
            g.say("wrote " + *dcout + ".p.json and " + *dcout + ".q.json");
        } else {
            std::cout << Json{{"P", to_json(p)}, {"Q", to_json(q)}}.dump(2) << "\n";
        }
        return 0;
    }

    if (*wcmd) {
        Json j = load_json_file(wfile);
        WalkDocument doc;
        doc.method = wmethod;
        doc.from = wfrom;
        doc.to = wto;
        doc.instance = j;
        FileKind kind = detect_kind(j);
        System sys;
        std::optional<TwoSum> two;
        if (kind == FileKind::TwoSumFile) {
            two = twosum_from_json(j);
            sys = two->assembled();
        } else if (kind == FileKind::SystemFile) {
            sys = system_from_json(j);
        } else {
            throw ParseError(wfile + ": walks need a system or 2-sum instance file");
        }
        auto verts = enumerate_vertices(sys, g.cap);
        if (verts.empty()) throw ContractError("walk: the instance has no vertices");
        if (wfrom >= verts.size() || wto >= verts.size())
            throw ContractError("walk: vertex index out of range (0.." +
                                std::to_string(verts.size() - 1) + ")");

        if (wmethod == "theorem") {
            if (!two) throw ContractError("walk --method theorem needs a 2-sum instance");
            try {
                TwoSumCtx ctx(*two, g.cap);
                doc.walk = connect(ctx, verts[wfrom], verts[wto]);
            } catch (const IntegrityError& e) {
                // Degenerate instance: retry on a perturbed copy, since
                // the construction assumes simplicity.
                g.say(std::string("construction failed (") + e.what() +
                      "); perturbing the right-hand side");
                PerturbOptions popts;
                popts.cap = g.cap;
                System simple = perturb_to_simple(sys, 1, popts);
                TwoSum pt = *two;
                std::size_t ma = pt.c_a.size();
                pt.c_a.assign(simple.b.begin(), simple.b.begin() + static_cast<long>(ma));
                pt.c_shared = simple.b[ma];
                pt.c_b.assign(simple.b.begin() + static_cast<long>(ma) + 1, simple.b.end());
                pt.split_ca = pt.c_shared - pt.split_cb;
                doc.instance = to_json(pt);
                auto pverts = enumerate_vertices(simple, g.cap);
                if (wfrom >= pverts.size() || wto >= pverts.size())
                    throw ContractError("walk: perturbed instance has fewer vertices");
                TwoSumCtx ctx(pt, g.cap);
                doc.walk = connect(ctx, pverts[wfrom], pverts[wto]);
            }
        } else if (wmethod == "unit") {
            doc.walk = connect_unit(sys, verts[wfrom], verts[wto], g.cap);
        } else {
            auto path = oracle::shortest_walk(sys, verts[wfrom].coords, verts[wto].coords, g.cap);
            if (path.empty() && !(verts[wfrom] == verts[wto]))
                throw IntegrityError("oracle walk: endpoints are disconnected");
            for (const auto& p : path) doc.walk.verts.push_back(Vertex(p));
            if (doc.walk.verts.empty()) doc.walk.verts.push_back(verts[wfrom]);
            doc.walk.tags.assign(doc.walk.verts.size() - 1, {StepRule::Jump, "2.1"});
        }
        write_or_print(wout, to_json(doc));
        return 0;
    }

    if (*bcmd) {
        Json j = load_json_file(bfile);
        FileKind kind = detect_kind(j);
        if (kind == FileKind::TwoSumFile) {
            TwoSum t = twosum_from_json(j);
            auto verts = enumerate_vertices(t.assembled(), g.cap);
            if (bvertex >= verts.size()) throw ContractError("band: vertex index out of range");
            BandInterval band = band_x(t, t.ypart(verts[bvertex].coords));
            write_or_print(std::nullopt, to_json(band));
        } else if (kind == FileKind::ThreeSumFile) {
            ThreeSum t = threesum_from_json(j);
            auto verts = enumerate_vertices(t.assembled(), g.cap);
            if (bvertex >= verts.size()) throw ContractError("band: vertex index out of range");
            BandPolygon poly = band_x3(t, t.ypart(verts[bvertex].coords));
            write_or_print(std::nullopt, to_json(poly));
        } else {
            throw ParseError(bfile + ": band expects a 2-sum or 3-sum instance file");
        }
        return 0;
    }

    if (*gcmd) {
        GenConfig cfg;
        cfg.kind = *kind_from_name(gkind);
        cfg.seed = gseed;
        cfg.cap = g.cap;
        cfg.require_simple = gsimple;
        cfg.require_both_categories = gboth;
        GeneratedInstance gi = generate(cfg);
        Json out;
        if (gi.two_sum)
            out = to_json(*gi.two_sum);
        else if (gi.three_sum)
            out = to_json(*gi.three_sum);
        else
            out = to_json(*gi.system);
        write_or_print(gout, out);
        return 0;
    }

    if (*vecmd) {
        Json j = load_json_file(vefile);
        std::vector<std::string> checks;
        std::size_t start = 0;
        while (start <= vechecks.size()) {
            auto comma = vechecks.find(',', start);
            if (comma == std::string::npos) comma = vechecks.size();
            if (comma > start) checks.push_back(vechecks.substr(start, comma - start));
            start = comma + 1;
        }
        Report rep = verify_file(j, checks, g.cap);
        Campaign one;
        one.reports.push_back(rep);
        if (vereport) write_text_file(*vereport, one.jsonl());
        if (vecsv) write_text_file(*vecsv, one.csv());
        bool ok = rep.all_pass();
        for (const auto& rec : rep.records)
            g.say((rec.pass ? "pass  " : "FAIL  ") + rec.check_id + " (" +
                  std::to_string(rec.cases) + " cases)" +
                  (rec.detail.empty() ? "" : ": " + rec.detail));
        if (g.json) std::cout << one.jsonl();
        return ok ? 0 : 1;
    }

    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ContractError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

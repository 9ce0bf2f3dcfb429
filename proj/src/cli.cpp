#include "strex/cli.hpp"

#include <fstream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "strex/classify2d.hpp"
#include "strex/dominance.hpp"
#include "strex/json_io.hpp"
#include "strex/mra.hpp"
#include "strex/spectral.hpp"
#include "strex/tiling.hpp"

namespace strex {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitOpen = 2;
constexpr int kExitCertification = 3;

struct Opts {
    std::string matrix;
    std::string corpus;
    std::string region_file;
    std::string svg_path;
    std::string out_path;
    bool json = false;
    long max_u_denom = 1024;
    int hex_grid = 4;
    long vec_cap = 50;
    int reduce_depth = 12;
    int max_stages = 64;
    int jobs = 1;
    int seed_vertices = 16;
    long range = 3;
};

SearchCaps caps_from(const Opts& o, bool enable_hexagon) {
    SearchCaps caps;
    caps.u_denom_max = o.max_u_denom;
    caps.hex_denom_max = o.hex_grid;
    caps.companion_cap = o.vec_cap;
    caps.reduce_depth = o.reduce_depth;
    caps.mra_max_stages = o.max_stages;
    caps.enable_hexagon = enable_hexagon && o.hex_grid > 0;
    return caps;
}

void emit(const Opts& o, std::ostream& out, const std::string& text) {
    if (o.out_path.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out_path);
    if (!f) throw Error("cannot open output file '" + o.out_path + "'");
    f << text;
}

void maybe_write_svg(const Opts& o, const Region& r) {
    if (o.svg_path.empty()) return;
    std::ofstream f(o.svg_path);
    if (!f) throw Error("cannot open svg file '" + o.svg_path + "'");
    f << region_to_svg(r);
}

std::vector<IntMatrix> load_inputs(const Opts& o) {
    std::vector<IntMatrix> ms;
    if (!o.matrix.empty() && !o.corpus.empty())
        throw ParseError("use exactly one of --matrix and --corpus", 1, 1);
    if (!o.matrix.empty()) {
        ms.push_back(parse_matrix_text(o.matrix));
        return ms;
    }
    if (o.corpus.empty()) throw ParseError("no input matrix given", 1, 1);
    std::ifstream f(o.corpus);
    if (!f) throw ParseError("cannot open corpus file '" + o.corpus + "'", 1, 1);
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        try {
            ms.push_back(parse_matrix_text(line));
        } catch (const ParseError& e) {
            throw ParseError(std::string(e.what()) + " in corpus", lineno, e.column);
        }
    }
    if (ms.empty()) throw ParseError("corpus contains no matrices", 1, 1);
    return ms;
}

// n >= 3 classification: expansiveness, the dominance certificate when it
// applies, and the index-2 obstruction note.
Json classify_ndim(const IntMatrix& a, int& exit_code) {
    Json j;
    j["n"] = a.n();
    j["det"] = det(a).get_str();
    bool exp = is_expansive(a);
    j["expansive"] = exp;
    if (!exp) {
        j["verdict"] = "not_expansive";
        exit_code = kExitOk;
        return j;
    }
    try {
        DominanceCert cert = classify_dominant(a);
        j["dominance"] = dominance_cert_to_json(cert);
        if (cert.verdict == DdVerdict::StrictCube) {
            j["verdict"] = "strictly_expansive_cube";
            exit_code = kExitOk;
            return j;
        }
        j["verdict"] = "strictly_expansive_cited";
        j["note"] = "inverse norm exactly 1 with a unique achiever pair; construction is 2-d only";
        exit_code = kExitOk;
        return j;
    } catch (const HypothesisError&) {
    }
    if (int_abs(det(a)) == 2) {
        j["verdict"] = "open";
        j["note"] = "no symmetric, convex, or connected-boundary tile can witness this matrix";
        exit_code = kExitOpen;
        return j;
    }
    j["verdict"] = "unknown";
    exit_code = kExitOpen;
    return j;
}

Json classify_2d(const IntMatrix& a, const Opts& o, int& exit_code) {
    Outcome2D outcome = classify(a, caps_from(o, true));
    Json j;
    j["matrix"] = matrix_to_json(a);
    j["outcome"] = outcome_to_json(outcome);
    try {
        DominanceCert cert = classify_dominant(a);
        j["dominance"] = dominance_cert_to_json(cert);
    } catch (const HypothesisError&) {
    }
    exit_code = (outcome.general_set.kind == VerdictKind::Open) ? kExitOpen : kExitOk;
    return j;
}

std::string outcome_text(const Json& j) {
    std::ostringstream os;
    const auto& o = j["outcome"];
    os << "expansive: " << (o["expansive"].get<bool>() ? "yes" : "no")
       << "  det: " << o["det"].get<std::string>()
       << "  trace: " << o["trace"].get<std::string>() << "\n";
    auto verdict_line = [&](const char* name, const Json& v) {
        os << name << ": " << v["kind"].get<std::string>();
        if (v.contains("note")) os << " (" << v["note"].get<std::string>() << ")";
        if (v.contains("witness")) os << " [witness attached]";
        os << "\n";
    };
    verdict_line("convex symmetric", o["convex_symmetric"]);
    verdict_line("general set", o["general_set"]);
    if (j.contains("dominance")) {
        const auto& d = j["dominance"];
        os << "dominance: alpha=" << d["alpha"].get<std::string>()
           << " strongly_connected=" << (d["strongly_connected"].get<bool>() ? "yes" : "no")
           << " verdict=" << d["verdict"].get<std::string>()
           << " |A^-1|_inf=" << d["inf_norm_inverse"].get<std::string>() << "\n";
    }
    if (o.contains("notes") && !o["notes"].empty()) {
        os << "notes:";
        for (const auto& n : o["notes"]) os << " " << n.get<std::string>();
        os << "\n";
    }
    return os.str();
}

int cmd_classify(const Opts& o, std::ostream& out) {
    std::vector<IntMatrix> ms = load_inputs(o);
    int worst = kExitOk;
    std::ostringstream buf;
    Json batch = Json::array();
    for (const IntMatrix& a : ms) {
        int code = kExitOk;
        Json j = (a.n() == 2) ? classify_2d(a, o, code) : classify_ndim(a, code);
        if (code > worst) worst = code;
        if (o.json)
            batch.push_back(j);
        else if (a.n() == 2)
            buf << "matrix: " << a.to_text() << "\n" << outcome_text(j) << "\n";
        else
            buf << "matrix: " << a.to_text() << "\n" << j.dump(2) << "\n\n";
    }
    if (o.json)
        emit(o, out, (ms.size() == 1 ? batch[0] : batch).dump(2) + "\n");
    else
        emit(o, out, buf.str());
    return worst;
}

// Witness production order: the half-unit cube when the inverse norm already
// beats 1, then the classifier's constructive witness, then cap surgery.
std::optional<Region> find_witness(const IntMatrix& a, const Opts& o) {
    if (inf_norm_inverse(a) < 1) {
        Region cube = unit_cell_region();
        if (strict_inclusion(a, cube)) return cube;
    }
    Outcome2D outcome = classify(a, caps_from(o, true));
    if (outcome.convex_symmetric.witness) return outcome.convex_symmetric.witness;
    if (outcome.general_set.witness) return outcome.general_set.witness;
    try {
        DominanceCert cert = classify_dominant(a);
        if (cert.verdict == DdVerdict::SurgeryNeeded) {
            ConvexBody cube(rect_polygon(rat(-1, 2), rat(1, 2), rat(-1, 2), rat(1, 2)));
            return surgery(a, cube);
        }
    } catch (const HypothesisError&) {
    } catch (const CertificationError&) {
    }
    return std::nullopt;
}

int cmd_witness(const Opts& o, std::ostream& out) {
    std::vector<IntMatrix> ms = load_inputs(o);
    if (ms.size() != 1 || ms[0].n() != 2)
        throw ParseError("witness needs a single 2x2 matrix", 1, 1);
    const IntMatrix& a = ms[0];
    auto w = find_witness(a, o);
    if (!w) return kExitOpen;
    if (!verify_tiles(*w).tiles || !strict_inclusion(a, *w)) return kExitCertification;
    maybe_write_svg(o, *w);
    emit(o, out, region_to_json(*w).dump(2) + "\n");
    return kExitOk;
}

int cmd_verify(const Opts& o, std::ostream& out) {
    std::vector<IntMatrix> ms = load_inputs(o);
    if (ms.size() != 1 || ms[0].n() != 2)
        throw ParseError("verify needs a single 2x2 matrix", 1, 1);
    if (o.region_file.empty()) throw ParseError("verify needs --region FILE", 1, 1);
    std::ifstream f(o.region_file);
    if (!f) throw ParseError("cannot open region file '" + o.region_file + "'", 1, 1);
    Json rj = Json::parse(f, nullptr, true);
    Region r = region_from_json(rj);

    TileReport rep = verify_tiles(r);
    bool incl = strict_inclusion(ms[0], r);
    Json j{{"tile_report", tile_report_to_json(rep)}, {"strict_inclusion", incl}};
    if (o.json) {
        emit(o, out, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "tiles: " << (rep.tiles ? "yes" : "no") << " (area " << rat_to_string(rep.area)
           << ")\nstrict inclusion: " << (incl ? "yes" : "no") << "\n";
        emit(o, out, os.str());
    }
    return (rep.tiles && incl) ? kExitOk : kExitCertification;
}

int cmd_construct(const Opts& o, std::ostream& out) {
    std::vector<IntMatrix> ms = load_inputs(o);
    if (ms.size() != 1 || ms[0].n() != 2)
        throw ParseError("construct needs a single 2x2 matrix", 1, 1);
    const IntMatrix& a = ms[0];
    ConvexBody seed = ellipsoid_seed(a, o.seed_vertices);
    MraTrace trace = build_mra_set(a, seed.region(), o.max_stages);
    maybe_write_svg(o, trace.k);
    if (o.json) {
        emit(o, out, mra_trace_to_json(trace).dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "stages: " << trace.terminated_at << "\n";
        for (size_t i = 0; i < trace.stages.size(); ++i)
            os << "  stage " << (i + 1) << " area " << rat_to_string(trace.stages[i].area) << "\n";
        os << "final area: " << rat_to_string(area(trace.k)) << "\n";
        emit(o, out, os.str());
    }
    return kExitOk;
}

int cmd_render(const Opts& o, std::ostream& out) {
    if (o.region_file.empty()) throw ParseError("render needs --region FILE", 1, 1);
    if (o.svg_path.empty()) throw ParseError("render needs --svg PATH", 1, 1);
    std::ifstream f(o.region_file);
    if (!f) throw ParseError("cannot open region file '" + o.region_file + "'", 1, 1);
    Json rj = Json::parse(f, nullptr, true);
    Region r = region_from_json(rj);
    maybe_write_svg(o, r);
    (void)out;
    return kExitOk;
}

int cmd_scan(const Opts& o, std::ostream& out) {
    const long n = o.range;
    if (n < 1) throw ParseError("range must be at least 1", 1, 1);
    const long side = 2 * n + 1;
    const long total = side * side * side * side;

    // Hexagon search off by default in scans; every skipped construction
    // degrades to a citation, never to a different boolean verdict.
    SearchCaps caps = caps_from(o, false);

    struct Row {
        bool expansive;
        bool det2;
        bool exceptional;
        VerdictKind convex;
        VerdictKind general;
    };
    std::vector<Row> rows(total);

    int jobs = std::max(1, o.jobs);
    auto worker = [&](long w) {
        for (long idx = w; idx < total; idx += jobs) {
            long rem = idx;
            long e[4];
            for (int i = 0; i < 4; ++i) {
                e[i] = rem % side - n;
                rem /= side;
            }
            IntMatrix m{{e[0], e[1]}, {e[2], e[3]}};
            Outcome2D oc = classify(m, caps);
            rows[idx] = {oc.expansive, int_abs(oc.det) == 2,
                         oc.trace == 0 && oc.det == -3 && oc.expansive,
                         oc.convex_symmetric.kind, oc.general_set.kind};
        }
    };
    if (jobs == 1) {
        worker(0);
    } else {
        std::vector<std::thread> ts;
        for (int w = 0; w < jobs; ++w) ts.emplace_back(worker, w);
        for (auto& t : ts) t.join();
    }

    long n_exp = 0, n_det2 = 0, n_exceptional = 0;
    long n_convex_pos = 0, n_convex_cited = 0, n_convex_imp = 0, n_convex_open = 0;
    long n_general_pos = 0, n_general_cited = 0, n_general_open = 0;
    bool consistent = true;
    for (const Row& r : rows) {
        if (!r.expansive) continue;
        ++n_exp;
        if (r.det2) ++n_det2;
        if (r.exceptional) ++n_exceptional;
        switch (r.convex) {
            case VerdictKind::Positive: ++n_convex_pos; break;
            case VerdictKind::PositiveCited: ++n_convex_cited; break;
            case VerdictKind::Impossible: ++n_convex_imp; break;
            default: ++n_convex_open; break;
        }
        switch (r.general) {
            case VerdictKind::Positive: ++n_general_pos; break;
            case VerdictKind::PositiveCited: ++n_general_cited; break;
            case VerdictKind::Open: ++n_general_open; break;
            default: break;
        }
        if (!r.det2 && !r.exceptional &&
            !(r.general == VerdictKind::Positive || r.general == VerdictKind::PositiveCited))
            consistent = false;
        if (r.convex == VerdictKind::Positive && r.general != VerdictKind::Positive)
            consistent = false;
    }

    Json j{{"range", n},
           {"total", total},
           {"expansive", n_exp},
           {"det_two", n_det2},
           {"exceptional_class", n_exceptional},
           {"convex_positive", n_convex_pos},
           {"convex_positive_cited", n_convex_cited},
           {"convex_impossible", n_convex_imp},
           {"convex_open", n_convex_open},
           {"general_positive", n_general_pos},
           {"general_positive_cited", n_general_cited},
           {"general_open", n_general_open},
           {"large_det_positive_consistent", consistent}};
    if (o.json) {
        emit(o, out, j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "entries in [-" << n << "," << n << "]: " << total << " matrices, " << n_exp
           << " expansive\n";
        os << "  |det| = 2 (convex/symmetric impossible, general open): " << n_det2 << "\n";
        os << "  exceptional char-poly class: " << n_exceptional << "\n";
        os << "  convex witness found: " << n_convex_pos << ", cited: " << n_convex_cited
           << ", impossible: " << n_convex_imp << ", open: " << n_convex_open << "\n";
        os << "  general positive: " << n_general_pos << ", cited: " << n_general_cited
           << ", open: " << n_general_open << "\n";
        os << "  large-determinant positivity consistent: " << (consistent ? "yes" : "no") << "\n";
        emit(o, out, os.str());
    }
    return consistent ? kExitOk : kExitCertification;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"exact decision and witness toolkit for strictly expansive integer matrices"};
    app.require_subcommand(1);
    Opts o;

    auto add_common = [&](CLI::App* cmd, bool needs_matrix) {
        if (needs_matrix) {
            cmd->add_option("-m,--matrix", o.matrix, "matrix in 'a,b;c,d' form");
            cmd->add_option("--corpus", o.corpus, "file with one matrix per line");
        }
        cmd->add_flag("--json", o.json, "emit JSON");
        cmd->add_option("-o,--out", o.out_path, "write output to a file");
        cmd->add_option("--max-u-denom", o.max_u_denom, "parallelogram search denominator cap");
        cmd->add_option("--hex-grid", o.hex_grid, "hexagon search denominator cap (0 disables)");
        cmd->add_option("--vec-cap", o.vec_cap, "companion reduction vector cap");
        cmd->add_option("--reduce-depth", o.reduce_depth, "conjugation search depth");
        cmd->add_option("--max-stages", o.max_stages, "construction stage cap");
        cmd->add_option("--jobs", o.jobs, "parallel workers for scans");
    };

    CLI::App* c_classify = app.add_subcommand("classify", "decide strict expansiveness");
    add_common(c_classify, true);

    CLI::App* c_witness = app.add_subcommand("witness", "emit a certified witness region");
    add_common(c_witness, true);
    c_witness->add_option("--svg", o.svg_path, "also render the witness to SVG");

    CLI::App* c_verify = app.add_subcommand("verify", "re-verify a witness region file");
    add_common(c_verify, true);
    c_verify->add_option("-k,--region", o.region_file, "region JSON file");

    CLI::App* c_construct = app.add_subcommand("construct", "build a compact scaling set");
    add_common(c_construct, true);
    c_construct->add_option("--seed-vertices", o.seed_vertices, "seed polygon vertex count");
    c_construct->add_option("--svg", o.svg_path, "render the final set to SVG");

    CLI::App* c_render = app.add_subcommand("render", "region JSON to SVG");
    c_render->add_option("-k,--region", o.region_file, "region JSON file");
    c_render->add_option("--svg", o.svg_path, "output SVG path");

    CLI::App* c_scan = app.add_subcommand("scan", "exhaustive entry-range summary");
    add_common(c_scan, false);
    c_scan->add_option("--range", o.range, "entry range bound");

    try {
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }

    try {
        if (c_classify->parsed()) return cmd_classify(o, out);
        if (c_witness->parsed()) return cmd_witness(o, out);
        if (c_verify->parsed()) return cmd_verify(o, out);
        if (c_construct->parsed()) return cmd_construct(o, out);
        if (c_render->parsed()) return cmd_render(o, out);
        if (c_scan->parsed()) return cmd_scan(o, out);
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const NotExpansiveError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const CertificationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitCertification;
    } catch (const NonTerminationError& e) {
        err << "error: " << e.what() << "\n";
        return kExitCertification;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const nlohmann::json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace strex

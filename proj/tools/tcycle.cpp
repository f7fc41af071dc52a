#include <omp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "tcycle/cycles.hpp"
#include "tcycle/decomposition.hpp"
#include "tcycle/dp.hpp"
#include "tcycle/generate.hpp"
#include "tcycle/kernel.hpp"
#include "tcycle/oracle.hpp"
#include "tcycle/treewidth.hpp"

using namespace tcycle;
using nlohmann::json;

namespace {

constexpr int kYes = 0, kNo = 1, kError = 2;

EmbeddedGraph load(const std::string& path) {
    EmbeddedGraph g = path == "-" ? parse_graph(std::cin) : parse_graph_file(path);
    try {
        validate_embedding(g);
    } catch (const Error& e) {
        throw Error("ValidationError", e.what());
    }
    return g;
}

void write_text(const std::string& path, const std::string& text) {
    if (path.empty()) return;
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("IOError", "cannot write " + path);
    out << text;
}

std::string edge_list(const Witness& w) {
    std::ostringstream s;
    for (size_t i = 0; i < w.edge_sets.size(); ++i) {
        for (size_t j = 0; j < w.edge_sets[i].size(); ++j) s << (j ? " " : "") << w.edge_sets[i][j];
        s << "\n";
    }
    return s.str();
}

uint64_t default_seed() {
    const char* s = std::getenv("TCYCLE_SEED");
    return s ? std::strtoull(s, nullptr, 10) : 1;
}

// graph records plus `c <eid...>` cycle lines (innermost first) and one `l <eid...>` loop line
CLConfiguration load_config(const std::string& path, EmbeddedGraph& g) {
    std::ifstream in(path);
    if (!in) throw Error("ParseError", "cannot open " + path);
    std::string line, graph_text;
    std::vector<std::vector<int>> cycles;
    std::vector<int> loop;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string rec;
        ls >> rec;
        if (rec == "c" || rec == "l") {
            std::vector<int> xs;
            for (int x; ls >> x;) xs.push_back(x);
            if (rec == "c")
                cycles.push_back(xs);
            else
                loop = xs;
        } else {
            graph_text += line + "\n";
        }
    }
    g = parse_graph_string(graph_text);
    validate_embedding(g);
    return make_configuration(g, cycles, loop, g.terminals());
}

Matching parse_pairs(const std::string& s) {
    Matching m;
    std::istringstream in(s);
    std::string tok;
    while (std::getline(in, tok, ',')) {
        auto c = tok.find(':');
        if (c == std::string::npos) throw Error("InvalidInput", "pair '" + tok + "' is not a:b");
        int a = std::stoi(tok.substr(0, c)), b = std::stoi(tok.substr(c + 1));
        m.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(m.begin(), m.end());
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"T-Cycle on embedded planar graphs"};
    app.require_subcommand(1);
    int jobs = 0;
    app.add_option("--jobs", jobs, "worker threads (0 = OpenMP default)");

    // solve
    auto* solve = app.add_subcommand("solve", "decide T-Cycle with the treewidth DP");
    std::string solve_in, solve_td, solve_report;
    solve->add_option("input", solve_in)->required();
    solve->add_option("--td", solve_td, "PACE decomposition to use");
    solve->add_option("--report", solve_report);

    // reduce
    auto* reduce = app.add_subcommand("reduce", "irrelevant-vertex removal");
    std::string red_in, red_out, red_report;
    int red_g = 0;
    double c1 = 4, c2 = 6;
    reduce->add_option("input", red_in)->required();
    reduce->add_option("output", red_out)->required();
    reduce->add_option("--g", red_g, "isolation threshold (0 = g(k))");
    reduce->add_option("--c1", c1);
    reduce->add_option("--c2", c2);
    reduce->add_option("--report", red_report);

    // kernelize
    auto* kern = app.add_subcommand("kernelize", "protrusion-replacement kernel");
    std::string k_in, k_out, k_report;
    KernelConfig cfg;
    bool no_verify = false, serial = false;
    kern->add_option("input", k_in)->required();
    kern->add_option("output", k_out)->required();
    kern->add_option("--report", k_report);
    kern->add_option("--level", cfg.level)->check(CLI::Range(1, 2));
    kern->add_option("--budget", cfg.budget)->check(CLI::Range(1, 8));
    kern->add_option("--g", cfg.g);
    kern->add_option("--c1", cfg.c1);
    kern->add_option("--c2", cfg.c2);
    kern->add_option("--eta1", cfg.eta1);
    kern->add_option("--eta2", cfg.eta2);
    kern->add_option("--max-boundary", cfg.max_boundary)->check(CLI::Range(1, 6));
    kern->add_option("--max-part", cfg.max_part)->check(CLI::Range(1, 18));
    kern->add_option("--max-candidates", cfg.max_candidates)->check(CLI::PositiveNumber);
    kern->add_option("--max-trials", cfg.max_trials)->check(CLI::NonNegativeNumber);
    kern->add_flag("--no-verify", no_verify);
    kern->add_flag("--serial", serial);

    // td
    auto* td = app.add_subcommand("td", "tree decomposition in PACE format");
    std::string td_in, td_mode = "greedy";
    td->add_option("input", td_in)->required();
    td->add_option("--mode", td_mode)->check(CLI::IsMember({"greedy", "radial"}));

    // oracle
    auto* orc = app.add_subcommand("oracle", "brute-force oracles");
    orc->require_subcommand(1);
    auto* o_cycle = orc->add_subcommand("t-cycle");
    auto* o_paths = orc->add_subcommand("disjoint-paths");
    auto* o_minor = orc->add_subcommand("minor");
    auto* o_iso = orc->add_subcommand("isolation");
    auto* o_conc = orc->add_subcommand("concentric");
    std::string o_in, o_pattern, o_pairs;
    int o_v = -1, o_l = 0, o_cap = 8;
    for (auto* s : {o_cycle, o_paths, o_minor, o_iso, o_conc}) s->add_option("input", o_in)->required();
    o_paths->add_option("--pairs", o_pairs, "a:b,c:d")->required();
    o_minor->add_option("pattern", o_pattern)->required();
    o_iso->add_option("--vertex", o_v)->required();
    o_iso->add_option("--l", o_l)->required();
    o_conc->add_option("--cap", o_cap);

    // check-config
    auto* chk = app.add_subcommand("check-config", "segments, types and costs of a CL-configuration");
    std::string chk_in;
    chk->add_option("input", chk_in)->required();

    // gen
    auto* gen = app.add_subcommand("gen", "generate an instance");
    std::string gen_family, gen_out = "-";
    GenParams gp;
    uint64_t seed = default_seed();
    gen->add_option("family", gen_family)
        ->required()
        ->check(CLI::IsMember({"nested-rings", "grid-with-terminals", "random-planar", "concentric-gadget"}));
    gen->add_option("output", gen_out);
    gen->add_option("--n", gp.n);
    gen->add_option("--k", gp.k);
    gen->add_option("--depth", gp.depth);
    gen->add_option("--rows", gp.rows);
    gen->add_option("--ring", gp.ring);
    gen->add_option("--keep", gp.keep);
    gen->add_flag("--hub,!--no-hub", gp.hub);
    gen->add_option("--seed", seed);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : kError;
    }
    if (jobs > 0) omp_set_num_threads(jobs);

    try {
        if (*solve) {
            auto g = load(solve_in);
            auto T = g.terminals();
            std::optional<Witness> w;
            if (!solve_td.empty()) {
                std::ifstream in(solve_td);
                if (!in) throw Error("IOError", "cannot open " + solve_td);
                auto plain = parse_pace(in);
                validate(g, plain);
                w = solve_t_cycle(g, T, make_nice(plain));
            } else {
                w = solve_t_cycle(g, T);
            }
            if (w)
                std::cout << "YES\n" << edge_list(*w);
            else
                std::cout << "NO\n";
            if (!solve_report.empty()) {
                json j{{"answer", w ? "YES" : "NO"}, {"n", g.num_vertices()}, {"k", (int)T.size()}};
                if (w) j["edges"] = w->edge_sets.empty() ? std::vector<int>{} : w->edge_sets[0];
                write_text(solve_report, j.dump(2) + "\n");
            }
            return w ? kYes : kNo;
        }
        if (*reduce) {
            auto g = load(red_in);
            auto T = g.terminals();
            IsolationBudget b = red_g > 0 ? IsolationBudget{red_g} : make_budget((int)T.size(), c1, c2);
            auto r = reed_pipeline(g, T, b, jobs != 1);
            write_text(red_out, serialize(r.graph));
            write_text(red_report, removal_report_json(r.report) + "\n");
            return kYes;
        }
        if (*kern) {
            auto g = load(k_in);
            cfg.verify = !no_verify;
            cfg.parallel = !serial && jobs != 1;
            auto r = kernelize(g, g.terminals(), cfg);
            write_text(k_out, serialize(r.graph));
            write_text(k_report, kernel_report_json(r.report) + "\n");
            return kYes;
        }
        if (*td) {
            auto g = load(td_in);
            auto d = build_td(g, td_mode == "radial" ? TdMode::RadialLayer : TdMode::GreedyFill);
            int w = validate(g, d);
            std::cout << "c width " << w << "\n" << to_pace(d, g.vertex_capacity());
            return kYes;
        }
        if (*orc) {
            auto g = load(o_in);
            auto T = g.terminals();
            bool ans = false;
            if (*o_cycle) {
                auto w = brute_t_cycle(g, T);
                ans = w.has_value();
                std::cout << (ans ? "YES\n" + edge_list(*w) : std::string("NO\n"));
            } else if (*o_paths) {
                ans = brute_disjoint_paths(g, parse_pairs(o_pairs));
                std::cout << (ans ? "YES\n" : "NO\n");
            } else if (*o_minor) {
                auto p = load(o_pattern);
                auto model = brute_minor_model(g, p);
                ans = model.has_value();
                std::cout << (ans ? "YES\n" : "NO\n");
                if (model)
                    for (const auto& bs : *model) {
                        for (size_t i = 0; i < bs.size(); ++i) std::cout << (i ? " " : "") << bs[i];
                        std::cout << "\n";
                    }
            } else if (*o_iso) {
                ans = brute_isolation(g, T, o_v, o_l);
                std::cout << (ans ? "YES\n" : "NO\n");
            } else {
                int c = brute_max_concentric(g, o_cap);
                std::cout << c << "\n";
                return kYes;
            }
            return ans ? kYes : kNo;
        }
        if (*chk) {
            EmbeddedGraph g;
            auto q = load_config(chk_in, g);
            q.g = &g;
            std::cout << config_report_json(q) << "\n";
            return is_convex(q) ? kYes : kNo;
        }
        if (*gen) {
            auto g = generate(gen_family, gp, seed);
            write_text(gen_out, serialize(g));
            return kYes;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kError;
    }
    return kError;
}

// Command-line front end: solve/verify instances, build embeddings from
// bit-matrix pairs, and run the two-party query-cost experiments.
//
// Exit codes: 0 = positive answer (solvable / stable / disjoint),
// 1 = negative answer, 2 = usage or input error.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "sr/io.hpp"
#include "sr/protocol.hpp"
#include "sr/random.hpp"
#include "sr/solver.hpp"

namespace {

using namespace sr;

OrderPolicy make_policy(const std::string& order, std::uint64_t seed) {
    if (order == "fifo") return OrderPolicy::fifo();
    if (order == "lifo") return OrderPolicy::lifo();
    if (order == "minid") return OrderPolicy::min_id();
    if (order == "random") return OrderPolicy::random(seed);
    throw CLI::ValidationError("--order", "expected one of fifo|lifo|minid|random");
}

int cmd_solve(const std::string& path, const OrderPolicy& policy, int cap) {
    NamedInstance named = load_instance(path);
    SolveReport report = decide_solvability(named.instance, policy, cap);
    if (!report.solvable) {
        std::cout << "UNSOLVABLE\n";
        return 1;
    }
    std::cout << "SOLVABLE\n" << serialize_matching(*report.witness, named);
    return 0;
}

int cmd_verify(const std::string& inst_path, const std::string& matching_path) {
    NamedInstance named = load_instance(inst_path);
    Matching m = load_matching(matching_path, named);
    StabilityReport report = is_stable(named.instance, m);
    if (report.stable) {
        std::cout << "STABLE\n";
        return 0;
    }
    const auto& w = *report.witness;
    std::cout << "UNSTABLE\nblocking pair: " << named.name_of(w.blocking_pair.first) << ' '
              << named.name_of(w.blocking_pair.second) << " (partners: "
              << named.name_of(w.partner_of_first) << ' ' << named.name_of(w.partner_of_second)
              << ")\n";
    return 1;
}

int cmd_phase1(const std::string& path, const OrderPolicy& policy) {
    NamedInstance named = load_instance(path);
    Phase1Result result = run_phase1(named.instance, policy);
    for (AgentId a = 0; a < named.instance.num_agents(); ++a) {
        std::cout << named.name_of(a) << ':';
        for (AgentId b : result.table.reduced_list(a)) std::cout << ' ' << named.name_of(b);
        std::cout << '\n';
    }
    Phase1Classification cls = classify(result);
    switch (cls.verdict) {
        case Phase1Classification::Verdict::Unsolvable:
            std::cout << "CLASSIFICATION: UNSOLVABLE\n";
            return 1;
        case Phase1Classification::Verdict::UniqueStable:
            std::cout << "CLASSIFICATION: UNIQUE-STABLE\n"
                      << serialize_matching(*cls.matching, named);
            return 0;
        case Phase1Classification::Verdict::Inconclusive:
            std::cout << "CLASSIFICATION: INCONCLUSIVE\n";
            return 0;
    }
    return 2;
}

int cmd_gen_embedding(const std::string& x_path, const std::string& y_path,
                      const std::string& out_path, bool pinned) {
    BitMatrix x = load_bit_matrix(x_path);
    BitMatrix y = load_bit_matrix(y_path);
    NamedInstance named =
        named_embedding(pinned ? build_embedding_pinned(x, y) : build_embedding(x, y));
    std::string text = serialize_instance(named);
    if (out_path.empty())
        std::cout << text;
    else
        save_text(out_path, text);
    return 0;
}

int cmd_disj(const std::string& x_path, const std::string& y_path) {
    BitMatrix x = load_bit_matrix(x_path);
    BitMatrix y = load_bit_matrix(y_path);
    int overlap = intersection_count(x, y);
    std::cout << "DISJ " << (overlap == 0 ? 1 : 0) << "\nintersections: " << overlap << '\n';
    return overlap == 0 ? 0 : 1;
}

// ---- experiment ----

struct ExperimentRow {
    int n = 0;
    std::uint64_t seed = 0;
    std::string kind;
    bool answer = false;
    long long bits_exchanged = 0;
    long long proposals = 0;
    long long removals = 0;
    std::string path;
    double wall_time = 0.0;
};

struct ExperimentConfig {
    std::vector<int> sizes{2, 3, 4};
    int trials = 30;
    std::vector<std::string> kinds{"disjoint", "unique"};
    std::string out_path;
    std::string plot_path;
    std::string transcript_path;
    bool exhaustive = false;
    bool timing = false;
    double density = 0.3;
    std::uint64_t seed = 1;
    int cap = 16;
    OrderPolicy policy;
};

ExperimentRow run_trial(int n, std::uint64_t seed, const std::string& kind, const BitMatrix& x,
                        const BitMatrix& y, const ExperimentConfig& cfg, bool dump_transcript) {
    ExperimentRow row;
    row.n = n;
    row.seed = seed;
    row.kind = kind;

    BatchPartition partition = BatchPartition::blocks(n);
    auto t0 = std::chrono::steady_clock::now();
    ReferenceSimulation sim = simulate_reference(x, y, partition, cfg.cap);
    auto t1 = std::chrono::steady_clock::now();
    row.answer = sim.transcript.answer;
    row.bits_exchanged = sim.transcript.bits_exchanged;
    if (cfg.timing) row.wall_time = std::chrono::duration<double>(t1 - t0).count();

    // Cross-check against the direct solver; the two must always agree.
    SolveReport direct = decide_solvability(build_embedding(x, y).instance, cfg.policy, cfg.cap);
    if (direct.solvable != sim.transcript.answer)
        throw std::logic_error("query-model answer disagrees with the direct solver");
    row.proposals = direct.stats.phase1.proposals;
    row.removals = direct.stats.phase1.removals;
    row.path = to_string(direct.path);

    if (dump_transcript && !cfg.transcript_path.empty())
        save_text(cfg.transcript_path, format_transcript(sim.transcript, partition));
    return row;
}

std::string render_plot(const std::vector<ExperimentRow>& rows) {
    // Mean bits per (kind, n), drawn in log-log space with a quadratic
    // reference line anchored at each kind's first point.
    std::map<std::string, std::map<int, std::pair<double, int>>> acc;
    for (const auto& r : rows) acc[r.kind][r.n].first += double(r.bits_exchanged), acc[r.kind][r.n].second++;
    const double W = 640, H = 480, ml = 70, mr = 20, mt = 30, mb = 50;
    double lx0 = 1e300, lx1 = -1e300, ly0 = 1e300, ly1 = -1e300;
    std::map<std::string, std::vector<std::pair<double, double>>> pts;
    for (auto& [kind, by_n] : acc)
        for (auto& [n, s] : by_n) {
            double px = std::log2(double(n)), py = std::log2(s.first / s.second);
            pts[kind].emplace_back(px, py);
            lx0 = std::min(lx0, px), lx1 = std::max(lx1, px);
            ly0 = std::min(ly0, py), ly1 = std::max(ly1, py);
        }
    if (pts.empty()) return "<svg xmlns=\"http://www.w3.org/2000/svg\"/>\n";
    if (lx1 - lx0 < 1e-9) lx1 = lx0 + 1;
    ly0 -= 0.5, ly1 += 0.5;
    auto X = [&](double v) { return ml + (v - lx0) / (lx1 - lx0) * (W - ml - mr); };
    auto Y = [&](double v) { return H - mb - (v - ly0) / (ly1 - ly0) * (H - mt - mb); };
    char buf[256];
    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H
        << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n",
                  ml, H - mb, W - mr, H - mb);
    svg << buf;
    std::snprintf(buf, sizeof buf,
                  "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"black\"/>\n", ml,
                  mt, ml, H - mb);
    svg << buf;
    svg << "<text x=\"" << (W / 2) << "\" y=\"" << (H - 12)
        << "\" text-anchor=\"middle\">matrix size n (log scale)</text>\n"
        << "<text x=\"16\" y=\"" << (H / 2)
        << "\" transform=\"rotate(-90 16 " << (H / 2)
        << ")\" text-anchor=\"middle\">mean bits exchanged (log scale)</text>\n";
    const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};
    int ci = 0;
    for (auto& [kind, v] : pts) {
        std::ostringstream poly;
        for (auto [px, py] : v) {
            std::snprintf(buf, sizeof buf, "%.1f,%.1f ", X(px), Y(py));
            poly << buf;
        }
        const char* color = colors[ci % 4];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"2\" points=\""
            << poly.str() << "\"/>\n";
        for (auto [px, py] : v) {
            std::snprintf(buf, sizeof buf, "<circle cx=\"%.1f\" cy=\"%.1f\" r=\"3\" fill=\"%s\"/>\n",
                          X(px), Y(py), color);
            svg << buf;
        }
        svg << "<text x=\"" << (W - mr - 150) << "\" y=\"" << (mt + 16 * (ci + 1)) << "\" fill=\""
            << color << "\">" << kind << "</text>\n";
        // quadratic reference through this kind's first point
        auto [ax, ay] = v.front();
        std::snprintf(buf, sizeof buf,
                      "<line x1=\"%.1f\" y1=\"%.1f\" x2=\"%.1f\" y2=\"%.1f\" stroke=\"%s\" "
                      "stroke-dasharray=\"4 3\" stroke-width=\"1\"/>\n",
                      X(ax), Y(ay), X(lx1), Y(ay + 2 * (lx1 - ax)), color);
        svg << buf;
        ++ci;
    }
    svg << "</svg>\n";
    return svg.str();
}

int cmd_experiment(const ExperimentConfig& cfg) {
    for (const auto& k : cfg.kinds)
        if (k != "disjoint" && k != "unique" && k != "intersecting")
            throw CLI::ValidationError("--kinds", "expected disjoint|unique|intersecting");
    std::vector<ExperimentRow> rows;
    std::uint64_t next_seed = cfg.seed;
    bool first = true;

    if (cfg.exhaustive) {
        for (int n : cfg.sizes) {
            if (n > 2)
                throw CLI::ValidationError("--exhaustive",
                                           "exhaustive enumeration is limited to n <= 2");
            const int cells = n * n;
            const std::uint64_t total = 1ull << cells;
            for (std::uint64_t xb = 0; xb < total; ++xb)
                for (std::uint64_t yb = 0; yb < total; ++yb) {
                    BitMatrix x(n), y(n);
                    for (int c = 0; c < cells; ++c) {
                        if (xb >> c & 1) x.set(c / n, c % n, true);
                        if (yb >> c & 1) y.set(c / n, c % n, true);
                    }
                    int overlap = intersection_count(x, y);
                    std::string kind;
                    if (overlap == 0 &&
                        std::count(cfg.kinds.begin(), cfg.kinds.end(), "disjoint"))
                        kind = "Disjoint";
                    else if (overlap == 1 &&
                             std::count(cfg.kinds.begin(), cfg.kinds.end(), "unique"))
                        kind = "UniquelyIntersecting";
                    else if (overlap > 1 &&
                             std::count(cfg.kinds.begin(), cfg.kinds.end(), "intersecting"))
                        kind = "Intersecting";
                    else
                        continue;
                    rows.push_back(
                        run_trial(n, (xb << cells) | yb, kind, x, y, cfg, first));
                    first = false;
                }
        }
    } else {
        for (int n : cfg.sizes)
            for (const auto& kind : cfg.kinds)
                for (int t = 0; t < cfg.trials; ++t) {
                    std::uint64_t seed = next_seed++;
                    BitMatrix x(n), y(n);
                    std::string kind_label;
                    if (kind == "disjoint") {
                        std::tie(x, y) =
                            sample_promise_input(n, PromiseKind::Disjoint, seed, cfg.density);
                        kind_label = "Disjoint";
                    } else if (kind == "unique") {
                        std::tie(x, y) = sample_promise_input(n, PromiseKind::UniquelyIntersecting,
                                                              seed, cfg.density);
                        kind_label = "UniquelyIntersecting";
                    } else {  // intersecting: independent draws, conditioned on overlap >= 1
                        Rng rng(seed);
                        while (true) {
                            for (int i = 0; i < n; ++i)
                                for (int j = 0; j < n; ++j) {
                                    x.set(i, j, rng.chance(cfg.density));
                                    y.set(i, j, rng.chance(cfg.density));
                                }
                            if (intersection_count(x, y) >= 1) break;
                        }
                        kind_label = "Intersecting";
                    }
                    rows.push_back(run_trial(n, seed, kind_label, x, y, cfg, first));
                    first = false;
                }
    }

    std::ostringstream csv;
    csv << "n,seed,kind,answer,bits_exchanged,proposals,removals,path,wall_time\n";
    for (const auto& r : rows) {
        char wt[32];
        std::snprintf(wt, sizeof wt, "%.6f", r.wall_time);
        csv << r.n << ',' << r.seed << ',' << r.kind << ',' << (r.answer ? 1 : 0) << ','
            << r.bits_exchanged << ',' << r.proposals << ',' << r.removals << ',' << r.path << ','
            << wt << '\n';
    }
    if (cfg.out_path.empty())
        std::cout << csv.str();
    else
        save_text(cfg.out_path, csv.str());
    if (!cfg.plot_path.empty()) save_text(cfg.plot_path, render_plot(rows));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stable roommates toolkit: solvers, disjointness embeddings, and two-party "
                 "query-protocol experiments"};
    app.require_subcommand(1);

    std::uint64_t seed = 1;
    int cap = 16;
    std::string order = "fifo";
    app.add_option("--seed", seed, "Seed for every randomized choice (default 1)");
    app.add_option("--cap", cap, "Largest agent count the exhaustive branches accept (default 16)");
    app.add_option("--order", order, "Proposal order: fifo|lifo|minid|random (default fifo)");

    std::string inst_path, matching_path, x_path, y_path, out_path;

    auto* solve = app.add_subcommand("solve", "Decide whether an instance admits a stable matching");
    solve->add_option("instance", inst_path, "Instance file")->required();

    auto* verify = app.add_subcommand("verify", "Check a matching for blocking pairs");
    verify->add_option("instance", inst_path, "Instance file")->required();
    verify->add_option("matching", matching_path, "Matching file, one pair per line")->required();

    auto* phase1 = app.add_subcommand("phase1", "Run the proposal round and print the reduced table");
    phase1->add_option("instance", inst_path, "Instance file")->required();

    auto* gen = app.add_subcommand("gen-embedding", "Embed a bit-matrix pair into an instance");
    gen->add_option("x", x_path, "Bit-matrix file for x")->required();
    gen->add_option("y", y_path, "Bit-matrix file for y")->required();
    gen->add_option("-o,--out", out_path, "Output instance file (default: stdout)");
    bool gen_pinned = false;
    gen->add_flag("--pinned", gen_pinned,
                  "Order each c agent's middle tier by its x row (see ANALYSIS.md)");

    auto* dj = app.add_subcommand("disj", "Report whether two bit matrices share a one");
    dj->add_option("x", x_path, "Bit-matrix file for x")->required();
    dj->add_option("y", y_path, "Bit-matrix file for y")->required();

    ExperimentConfig cfg;
    auto* exp = app.add_subcommand("experiment", "Measure query bits over sampled embeddings");
    exp->add_option("--sizes", cfg.sizes, "Matrix sizes to sweep (default 2 3 4)")
        ->delimiter(',');
    exp->add_option("--trials", cfg.trials, "Trials per size and kind (default 30)");
    exp->add_option("--kinds", cfg.kinds,
                    "Input kinds: disjoint|unique|intersecting (default disjoint,unique)")
        ->delimiter(',');
    exp->add_option("--density", cfg.density, "Bernoulli density for sampled matrices (default 0.3)");
    exp->add_option("--out", cfg.out_path, "CSV output path (default: stdout)");
    exp->add_option("--plot", cfg.plot_path, "Write an SVG plot of mean bits per size");
    exp->add_option("--transcript-out", cfg.transcript_path,
                    "Dump the first trial's full query transcript");
    exp->add_flag("--exhaustive", cfg.exhaustive,
                  "Enumerate every matrix pair instead of sampling (n <= 2)");
    exp->add_flag("--timing", cfg.timing,
                  "Record real wall time (off by default so output is byte-stable)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    }

    try {
        OrderPolicy policy = make_policy(order, seed);
        if (app.got_subcommand(solve)) return cmd_solve(inst_path, policy, cap);
        if (app.got_subcommand(verify)) return cmd_verify(inst_path, matching_path);
        if (app.got_subcommand(phase1)) return cmd_phase1(inst_path, policy);
        if (app.got_subcommand(gen)) return cmd_gen_embedding(x_path, y_path, out_path, gen_pinned);
        if (app.got_subcommand(dj)) return cmd_disj(x_path, y_path);
        if (app.got_subcommand(exp)) {
            cfg.seed = seed;
            cfg.cap = cap;
            cfg.policy = policy;
            return cmd_experiment(cfg);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

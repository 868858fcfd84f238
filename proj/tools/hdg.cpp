// Command-line front end: invariants of decorated Heegaard diagrams, property
// verification suites, the move-based fuzzer, and Seifert-data surgery
// quantities.

#include "hdg/invariants.hpp"
#include "hdg/matching.hpp"
#include "hdg/parse.hpp"
#include "hdg/surgery.hpp"
#include "hdg/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

namespace {

using nlohmann::json;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw hdg::DiagramError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

hdg::DecoratedDiagram load_diagram(const std::string& path, bool auto_match) {
    hdg::RawDiagram raw = hdg::parse_hdg_raw(read_file(path));
    hdg::DecoratedDiagram d = hdg::DecoratedDiagram::build(raw);
    if (!d.has_matching() && auto_match) d = hdg::with_matching(d, hdg::find_matching(d));
    return d;
}

int cmd_compute(const std::string& path, bool as_json) {
    const hdg::DecoratedDiagram d = load_diagram(path, true);
    const hdg::RationalMatrix A = d.intersection_matrix();
    const hdg::RationalMatrix J = d.inverse_intersection();
    const hdg::InvariantSet inv = hdg::all_invariants(d);

    if (as_json) {
        json out;
        out["genus"] = d.genus();
        out["crossings"] = d.num_crossings();
        out["det"] = hdg::to_string(A.determinant());
        json jm = json::array();
        for (std::size_t r = 0; r < J.size(); ++r) {
            json row = json::array();
            for (std::size_t c = 0; c < J.size(); ++c) row.push_back(hdg::to_string(J.at(r, c)));
            jm.push_back(row);
        }
        out["J"] = jm;
        out["ell2"] = hdg::to_string(inv.ell2);
        out["s_ell"] = hdg::to_string(inv.s_ell);
        out["e"] = hdg::to_string(inv.euler);
        out["theta_tilde"] = hdg::to_string(inv.theta_tilde);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "genus        " << d.genus() << "\n";
    std::cout << "crossings    " << d.num_crossings() << "\n";
    std::cout << "det          " << hdg::to_string(A.determinant()) << "\n";
    for (std::size_t r = 0; r < J.size(); ++r) {
        std::cout << (r == 0 ? "J            " : "             ");
        for (std::size_t c = 0; c < J.size(); ++c) std::cout << hdg::to_string(J.at(r, c)) << " ";
        std::cout << "\n";
    }
    std::cout << "ell2         " << hdg::to_string(inv.ell2) << "\n";
    std::cout << "s_ell        " << hdg::to_string(inv.s_ell) << "\n";
    std::cout << "e            " << hdg::to_string(inv.euler) << "\n";
    std::cout << "theta_tilde  " << hdg::to_string(inv.theta_tilde) << "\n";
    return 0;
}

int run_checks(const std::vector<std::string>& names, const hdg::verify::DiagramSource& src,
               long long iters, std::uint64_t seed, int threads, bool as_json) {
    using hdg::verify::CheckResult;
    std::vector<std::function<CheckResult()>> jobs;
    for (const auto& name : names) {
        if (name == "twist")
            jobs.push_back([&, iters, seed] { return hdg::verify::check_twist(src, iters, seed); });
        else if (name == "sl-lk")
            jobs.push_back([&, iters, seed] { return hdg::verify::check_sl_lk(src, iters, seed); });
        else if (name == "basepoints")
            jobs.push_back(
                [&, iters, seed] { return hdg::verify::check_basepoints(src, iters, seed); });
        else if (name == "bigon")
            jobs.push_back([&, iters, seed] { return hdg::verify::check_bigon(src, iters, seed); });
        else if (name == "slide")
            jobs.push_back([&, iters, seed] { return hdg::verify::check_slide(src, iters, seed); });
        else if (name == "w-change")
            jobs.push_back(
                [&, iters, seed] { return hdg::verify::check_w_change(src, iters, seed); });
        else if (name == "square")
            jobs.push_back([&, iters, seed] { return hdg::verify::check_square(src, iters, seed); });
        else if (name == "m-change")
            jobs.push_back(
                [&, iters, seed] { return hdg::verify::check_m_change(src, iters, seed); });
        else if (name == "structure")
            jobs.push_back(
                [&, iters, seed] { return hdg::verify::check_structure(src, iters, seed); });
        else if (name == "surgery")
            jobs.push_back([iters, seed] { return hdg::verify::check_surgery(iters, seed); });
        else
            throw hdg::DiagramError("unknown check '" + name + "'");
    }

    std::vector<CheckResult> results(jobs.size());
    if (threads <= 1) {
        for (std::size_t i = 0; i < jobs.size(); ++i) results[i] = jobs[i]();
    } else {
        std::vector<std::future<CheckResult>> futs;
        for (auto& job : jobs) futs.push_back(std::async(std::launch::async, job));
        for (std::size_t i = 0; i < futs.size(); ++i) results[i] = futs[i].get();
    }

    bool all_pass = true;
    json out = json::array();
    for (const auto& r : results) {
        if (!r.passed) all_pass = false;
        if (as_json) {
            json entry;
            entry["check"] = r.name;
            entry["status"] = r.skipped ? "skipped" : (r.passed ? "pass" : "fail");
            entry["cases"] = r.cases;
            if (!r.passed) {
                entry["failure"] = r.failure;
                entry["reproducer"] = r.reproducer;
            }
            out.push_back(entry);
        } else {
            std::cout << (r.skipped ? "SKIP" : (r.passed ? "PASS" : "FAIL")) << "  " << r.name
                      << "  (" << r.cases << " cases)\n";
            if (!r.passed) {
                std::cout << "  failure: " << r.failure << "\n";
                if (!r.reproducer.empty())
                    std::cout << "  reproducer:\n" << r.reproducer << "\n";
            }
        }
    }
    if (as_json) std::cout << out.dump(2) << "\n";
    return all_pass ? 0 : 1;
}

int cmd_fuzz(long long count, int steps, int genus_max, std::uint64_t seed, int threads,
             const std::string& out_dir, bool as_json) {
    struct Slot {
        bool failed = false;
        std::string what;
        std::string repro;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(count));
    auto work = [&](long long k) {
        const std::uint64_t s = hdg::verify::iter_seed(seed, k);
        try {
            hdg::FuzzOptions opt;
            opt.steps = steps;
            opt.genus_max = genus_max;
            const hdg::DecoratedDiagram d =
                hdg::random_diagram_from(hdg::genus_one_s3(), s, opt);
            const hdg::InvariantSet inv = hdg::all_invariants(d);
            if (inv.theta_tilde != 0) {
                slots[k].failed = true;
                slots[k].what = "theta_tilde = " + hdg::to_string(inv.theta_tilde) +
                                " on a move-generated S^3 diagram (seed " + std::to_string(s) +
                                ")";
                slots[k].repro = hdg::to_hdg(d);
            }
        } catch (const hdg::DiagramError& e) {
            slots[k].failed = true;
            slots[k].what = std::string("move sequence produced an invalid diagram: ") + e.what();
        }
    };
    if (threads <= 1) {
        for (long long k = 0; k < count; ++k) work(k);
    } else {
        std::vector<std::future<void>> futs;
        for (int t = 0; t < threads; ++t)
            futs.push_back(std::async(std::launch::async, [&, t] {
                for (long long k = t; k < count; k += threads) work(k);
            }));
        for (auto& f : futs) f.get();
    }

    long long failures = 0;
    json out = json::array();
    for (long long k = 0; k < count; ++k) {
        if (!slots[k].failed) continue;
        ++failures;
        std::string path = out_dir + "/fuzz_fail_" + std::to_string(k) + ".hdg";
        if (!slots[k].repro.empty()) {
            std::ofstream f(path);
            f << slots[k].repro;
        }
        if (as_json) {
            json entry;
            entry["iteration"] = k;
            entry["failure"] = slots[k].what;
            if (!slots[k].repro.empty()) entry["reproducer_file"] = path;
            out.push_back(entry);
        } else {
            std::cout << "FAIL iteration " << k << ": " << slots[k].what << "\n";
            if (!slots[k].repro.empty()) std::cout << "  reproducer written to " << path << "\n";
        }
    }
    if (as_json) {
        json root;
        root["count"] = count;
        root["failures"] = failures;
        root["reports"] = out;
        std::cout << root.dump(2) << "\n";
    } else {
        std::cout << (failures == 0 ? "PASS" : "FAIL") << "  fuzz  (" << count
                  << " diagrams, " << failures << " failures)\n";
    }
    return failures == 0 ? 0 : 1;
}

int cmd_surgery(const std::string& matrix_path, long long n, const std::string& emit,
                bool as_json) {
    std::istringstream in(read_file(matrix_path));
    std::vector<hdg::Integer> entries;
    std::string word;
    while (in >> word) entries.push_back(hdg::Integer(word));
    std::size_t dim = 0;
    while (dim * dim < entries.size()) ++dim;
    if (dim * dim != entries.size() || dim == 0 || dim % 2 != 0)
        throw hdg::SymplecticViolation("expected a 2g x 2g whitespace-separated integer matrix");
    hdg::SeifertData s;
    s.genus = static_cast<int>(dim / 2);
    s.linking.assign(dim, std::vector<hdg::Integer>(dim));
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) s.linking[i][j] = entries[i * dim + j];

    const bool want_lambda = emit == "lambda" || emit == "all";
    const bool want_alex = emit == "alexander" || emit == "all";
    const hdg::Integer lp = hdg::lambda_prime(s);

    json out;
    out["g"] = s.genus;
    if (want_lambda) {
        out["lambda_prime"] = lp.str();
        out["lambda_prime_plus"] = hdg::lambda_prime_plus(s).str();
        out["surgery_delta"] = hdg::casson_surgery_delta(s, n).str();
        out["n"] = n;
    }
    if (want_alex) {
        const hdg::LaurentPolynomial delta = hdg::alexander(s);
        json coeffs;
        for (const auto& [e, v] : delta.coeff) coeffs[std::to_string(e)] = v.str();
        out["alexander"] = coeffs;
        out["alexander_str"] = delta.str();
        out["delta_second_half"] = hdg::to_string(hdg::delta_second_derivative_at_one(s));
    }
    if (as_json) {
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "g                " << s.genus << "\n";
    if (want_lambda) {
        std::cout << "lambda_prime     " << lp.str() << "\n";
        std::cout << "lambda_prime_+   " << hdg::lambda_prime_plus(s).str() << "\n";
        std::cout << "surgery 1/" << n << "      " << hdg::casson_surgery_delta(s, n).str()
                  << "\n";
    }
    if (want_alex) {
        std::cout << "alexander        " << out["alexander_str"].get<std::string>() << "\n";
        std::cout << "1/2 Delta''(1)   " << out["delta_second_half"].get<std::string>() << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Combinatorial invariants of decorated Heegaard diagrams"};
    app.require_subcommand(1);
    app.fallthrough();  // accept the global flags after a subcommand as well

    bool as_json = false;
    std::uint64_t seed = 1;
    int threads = 1;
    app.add_flag("--json", as_json, "emit JSON instead of aligned text");
    app.add_option("--seed", seed, "seed for randomized suites");
    app.add_option("--threads", threads, "worker threads for verify/fuzz");

    auto* compute = app.add_subcommand("compute", "invariants of one HDG file");
    std::string compute_file;
    compute->add_option("file", compute_file, "HDG diagram file")->required();

    auto* verify = app.add_subcommand("verify", "run property suites");
    std::string verify_file;
    bool use_fuzz = false;
    std::string checks = "twist,sl-lk,basepoints,bigon,slide,w-change,square,m-change,structure,surgery";
    long long iters = 50;
    verify->add_option("file", verify_file, "HDG diagram file used as the fuzz base");
    verify->add_flag("--fuzz", use_fuzz, "fuzz from the stock base diagrams");
    verify->add_option("--checks", checks, "comma-separated check list");
    verify->add_option("--iters", iters, "iterations per check");

    auto* fuzz = app.add_subcommand("fuzz", "generate random diagrams and self-test them");
    long long count = 100;
    int steps = 12;
    int genus_max = 4;
    std::string out_dir = ".";
    fuzz->add_option("--count", count, "number of diagrams");
    fuzz->add_option("--steps", steps, "moves per diagram");
    fuzz->add_option("--genus-max", genus_max, "genus cap");
    fuzz->add_option("--out", out_dir, "directory for failing reproducers");

    auto* surgery = app.add_subcommand("surgery", "Casson surgery quantities from Seifert data");
    std::string matrix_file;
    long long n = 1;
    std::string emit = "all";
    surgery->add_option("--linking-matrix", matrix_file, "2g x 2g integer matrix file")
        ->required();
    surgery->add_option("--n", n, "surgery coefficient 1/n");
    surgery->add_option("--emit", emit, "alexander|lambda|all")
        ->check(CLI::IsMember({"alexander", "lambda", "all"}));

    CLI11_PARSE(app, argc, argv);

    try {
        if (compute->parsed()) return cmd_compute(compute_file, as_json);
        if (verify->parsed()) {
            std::optional<hdg::DecoratedDiagram> fixed;
            if (!verify_file.empty())
                fixed = load_diagram(verify_file, true);
            else if (!use_fuzz)
                throw hdg::DiagramError("verify needs an HDG file or --fuzz");
            const bool fixed_only = fixed && !use_fuzz;
            hdg::verify::DiagramSource src(fixed_only ? fixed : std::nullopt, seed);
            std::vector<std::string> names;
            std::stringstream ss(checks);
            std::string name;
            while (std::getline(ss, name, ','))
                if (!name.empty()) names.push_back(name);
            return run_checks(names, src, iters, seed, threads, as_json);
        }
        if (fuzz->parsed()) return cmd_fuzz(count, steps, genus_max, seed, threads, out_dir, as_json);
        if (surgery->parsed()) return cmd_surgery(matrix_file, n, emit, as_json);
    } catch (const hdg::DiagramError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

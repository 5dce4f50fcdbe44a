// taum - exact Ramanujan tau tables and eigenvalue power-sum diagnostics.
//
// Subcommands build/load binary coefficient caches, emit the exponent table,
// verify the envelope construction and the local Euler-factor decompositions,
// compute summatory series and angle statistics, and run the full
// verification suite.
//
// Exit codes: 0 success, 1 failed verification or runtime error, 2 usage.
// Thread count comes from --threads or the TAUM_THREADS environment variable
// (default: all hardware threads).

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "taum/envelope.hpp"
#include "taum/hecke_core.hpp"
#include "taum/lfunctions.hpp"
#include "taum/sums.hpp"
#include "taum/tau_cache.hpp"
#include "taum/verify.hpp"

namespace {

using json = nlohmann::ordered_json;

unsigned g_threads = 0;

taum::CoefficientTable load_or_build(const std::string& cache_path, uint64_t max_x,
                                     const std::string& backend) {
    if (!cache_path.empty()) return taum::read_cache(cache_path);
    const taum::Backend b =
        backend == "oracle" ? taum::Backend::oracle : taum::Backend::fast;
    return taum::build_coefficient_table(max_x, b, g_threads);
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("cannot open output file " + path);
    os << content;
    if (!os) throw std::runtime_error("write failed on " + path);
}

std::string series_csv(const std::vector<uint64_t>& x, const std::vector<double>& v) {
    std::string out = "x,value\n";
    char buf[64];
    for (size_t i = 0; i < x.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%llu,%.12g\n", (unsigned long long)x[i], v[i]);
        out += buf;
    }
    return out;
}

void emit(const std::string& path, const std::string& content) {
    if (path.empty())
        std::cout << content;
    else
        write_text(path, content);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact tau tables, envelope exponents, and power-sum diagnostics"};
    app.require_subcommand(1);

    if (const char* env = std::getenv("TAUM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) g_threads = unsigned(v);
    }
    app.add_option("--threads", g_threads, "worker threads (default: all cores)");

    // --- tau: build a coefficient cache ---
    uint64_t tau_max = 1'000'000;
    std::string tau_backend = "fast";
    std::string tau_out = "tau.tauc";
    auto* tau_cmd = app.add_subcommand("tau", "build the exact coefficient table and write a cache");
    tau_cmd->add_option("--max", tau_max, "table bound X")->capture_default_str();
    tau_cmd->add_option("--backend", tau_backend, "fast | oracle")
        ->check(CLI::IsMember({"fast", "oracle"}))
        ->capture_default_str();
    tau_cmd->add_option("--out", tau_out, "cache path")->capture_default_str();

    // --- table: exponent table CSV ---
    std::vector<double> table_r = {0, 0.5, 1, 1.5, 2, 2.5, 3, 3.5, 4};
    std::string table_out;
    auto* table_cmd = app.add_subcommand("table", "emit the exponent table as CSV");
    table_cmd->add_option("--r-values", table_r, "comma-separated r list")
        ->delimiter(',')
        ->capture_default_str();
    table_cmd->add_option("--out", table_out, "output path (default: stdout)");

    // --- envelope: coefficients + sign verification ---
    double env_r = 0.5;
    int env_grid = 100'000;
    std::string env_family = "both";
    std::string env_out;
    auto* env_cmd = app.add_subcommand("envelope", "verify the envelope sign conditions at r");
    env_cmd->add_option("--r", env_r, "exponent parameter r > 0")->capture_default_str();
    env_cmd->add_option("--grid", env_grid, "grid points")->capture_default_str();
    env_cmd->add_option("--family", env_family, "minus | plus | both")
        ->check(CLI::IsMember({"minus", "plus", "both"}))
        ->capture_default_str();
    env_cmd->add_option("--out", env_out, "report path (default: stdout)");

    // --- optimize: grid search for (kappa, eta) ---
    double opt_r = 0.5, opt_step = 1e-3;
    std::string opt_family = "minus";
    std::string opt_out;
    auto* opt_cmd = app.add_subcommand("optimize", "grid-search the envelope contact points");
    opt_cmd->add_option("--r", opt_r, "exponent parameter r > 0")->capture_default_str();
    opt_cmd->add_option("--family", opt_family, "minus | plus")
        ->check(CLI::IsMember({"minus", "plus"}))
        ->capture_default_str();
    opt_cmd->add_option("--step", opt_step, "grid step (<= 1e-2)")->capture_default_str();
    opt_cmd->add_option("--out", opt_out, "report path (default: stdout)");

    // --- euler: local decomposition residuals ---
    uint64_t euler_max_p = 100;
    int euler_depth = 6;
    uint64_t euler_max_x = 1000;
    std::string euler_cache, euler_backend = "fast", euler_out;
    auto* euler_cmd =
        app.add_subcommand("euler", "local factor quotients H_{j,p} as CSV, with degree-1 check");
    euler_cmd->add_option("--max-p", euler_max_p, "largest prime")->capture_default_str();
    euler_cmd->add_option("--depth", euler_depth, "series depth")->capture_default_str();
    euler_cmd->add_option("--max", euler_max_x, "table bound if building")->capture_default_str();
    euler_cmd->add_option("--cache", euler_cache, "load table from cache");
    euler_cmd->add_option("--backend", euler_backend, "fast | oracle")
        ->check(CLI::IsMember({"fast", "oracle"}));
    euler_cmd->add_option("--out", euler_out, "CSV path (default: stdout)");

    // --- powersum: S*(x; r) series + growth fit ---
    std::vector<double> ps_r = {0.5, 1.0};
    uint64_t ps_max = 1'000'000;
    std::string ps_cache, ps_backend = "fast", ps_out;
    auto* ps_cmd = app.add_subcommand("powersum", "power-sum series over the checkpoint grid");
    ps_cmd->add_option("--r-values", ps_r,
                       "comma-separated r list (r >= 0; at r = 0 a term counts only "
                       "when the integer coefficient is nonzero)")
        ->delimiter(',')
        ->capture_default_str();
    ps_cmd->add_option("--max", ps_max, "largest x")->capture_default_str();
    ps_cmd->add_option("--cache", ps_cache, "load table from cache");
    ps_cmd->add_option("--backend", ps_backend, "fast | oracle");
    ps_cmd->add_option("--out", ps_out, "output prefix (writes <prefix>_r<r>.csv and report)");

    // --- signs: sign counts + sign diagnostics ---
    uint64_t sg_max = 1'000'000;
    std::string sg_cache, sg_backend = "fast", sg_out;
    auto* sg_cmd = app.add_subcommand("signs", "sign counts, signed-sum ratio, and sign diagnostics");
    sg_cmd->add_option("--max", sg_max, "largest x")->capture_default_str();
    sg_cmd->add_option("--cache", sg_cache, "load table from cache");
    sg_cmd->add_option("--backend", sg_backend, "fast | oracle");
    sg_cmd->add_option("--out", sg_out, "output prefix");

    // --- satotate: angle histogram + KS ---
    uint64_t st_max = 1'000'000;
    int st_bins = 50;
    std::string st_cache, st_backend = "fast", st_out;
    auto* st_cmd = app.add_subcommand("satotate", "eigenvalue angle histogram and KS distance");
    st_cmd->add_option("--max", st_max, "largest prime bound")->capture_default_str();
    st_cmd->add_option("--bins", st_bins, "histogram bins")->capture_default_str();
    st_cmd->add_option("--cache", st_cache, "load table from cache");
    st_cmd->add_option("--backend", st_backend, "fast | oracle");
    st_cmd->add_option("--out", st_out, "output prefix");

    // --- verify-all ---
    taum::VerifyOptions vopts;
    auto* verify_cmd = app.add_subcommand("verify-all", "run the full verification suite");
    verify_cmd->add_option("--max-x", vopts.max_x, "table bound")->capture_default_str();
    verify_cmd->add_option("--grid", vopts.grid, "envelope grid")->capture_default_str();
    verify_cmd->add_option("--depth", vopts.depth, "decomposition depth")->capture_default_str();
    verify_cmd->add_option("--bins", vopts.bins, "histogram bins")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);  // prints help or the parse error
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (*tau_cmd) {
            const taum::Backend b =
                tau_backend == "oracle" ? taum::Backend::oracle : taum::Backend::fast;
            const auto table = taum::build_coefficient_table(tau_max, b, g_threads);
            taum::write_cache(table, tau_out);
            std::cout << "wrote " << tau_out << " (X = " << tau_max << ", backend "
                      << tau_backend << ")\n";
            return 0;
        }

        if (*table_cmd) {
            emit(table_out, taum::exponent_table_csv(table_r));
            return 0;
        }

        if (*env_cmd) {
            json rep;
            bool all_pass = true;
            for (taum::Family f : {taum::Family::minus, taum::Family::plus}) {
                if (env_family != "both" && env_family != taum::family_name(f)) continue;
                const auto c = taum::envelope_coefficients(env_r, f);
                const auto v = taum::verify_envelope(env_r, f, env_grid);
                all_pass &= v.pass;
                json entry;
                entry["family"] = taum::family_name(f);
                entry["a"] = c.a;
                entry["rho"] = taum::rho_from_coefficients(c);
                entry["min"] = v.min_value;
                entry["max"] = v.max_value;
                entry["pass"] = v.pass;
                rep["families"].push_back(entry);
            }
            rep["r"] = env_r;
            rep["grid"] = env_grid;
            rep["pass"] = all_pass;
            emit(env_out, rep.dump(2) + "\n");
            if (!all_pass) {
                std::cerr << "envelope: sign condition violated at r = " << env_r << "\n";
                return 1;
            }
            return 0;
        }

        if (*opt_cmd) {
            const taum::Family f =
                opt_family == "plus" ? taum::Family::plus : taum::Family::minus;
            const auto res = taum::optimize_parameters(opt_r, f, opt_step, 1000, 1e-10, g_threads);
            json rep;
            rep["r"] = opt_r;
            rep["family"] = opt_family;
            rep["step"] = opt_step;
            rep["kappa"] = res.kappa;
            rep["eta"] = res.eta;
            rep["rho"] = res.rho;
            rep["candidates_tested"] = res.candidates_tested;
            rep["candidates_valid"] = res.candidates_valid;
            emit(opt_out, rep.dump(2) + "\n");
            return 0;
        }

        if (*euler_cmd) {
            const auto table = load_or_build(euler_cache, euler_max_x, euler_backend);
            if (euler_max_p > table.x_bound())
                throw std::out_of_range("euler: --max-p exceeds table bound");
            emit(euler_out, taum::residual_csv(table, euler_max_p, euler_depth));
            double worst = 0.0;
            for (uint64_t p = 2; p <= euler_max_p; ++p) {
                if (!taum::detail::is_prime_u64(p)) continue;
                const double theta = taum::prime_local_data(table, p).theta_p;
                for (int j = 1; j <= 4; ++j)
                    worst = std::max(worst,
                                     std::abs(taum::decomposition_residual(theta, j, euler_depth).c[1]));
            }
            std::cerr << "max |degree-1 coefficient| = " << worst << "\n";
            if (worst > 1e-9) {
                std::cerr << "euler: residual too large\n";
                return 1;
            }
            return 0;
        }

        if (*ps_cmd) {
            const auto table = load_or_build(ps_cache, ps_max, ps_backend);
            const auto cps = taum::default_checkpoints(std::min(ps_max, table.x_bound()));
            json rep;
            rep["max_x"] = cps.back();
            for (double r : ps_r) {
                const auto s = taum::power_sum_series(table, r, cps);
                char rbuf[32];
                std::snprintf(rbuf, sizeof(rbuf), "%g", r);
                if (!ps_out.empty())
                    write_text(ps_out + "_r" + rbuf + ".csv", series_csv(s.x, s.value));
                else
                    std::cout << "# r = " << rbuf << "\n" << series_csv(s.x, s.value);
                json fit;
                try {
                    const auto f = taum::fit_exponent(s);
                    fit["rho_hat"] = f.rho_hat;
                    fit["intercept"] = f.intercept;
                    fit["residual"] = f.residual;
                } catch (const std::exception& e) {
                    fit["error"] = e.what();
                }
                rep["fits"][rbuf] = fit;
            }
            emit(ps_out.empty() ? "" : ps_out + "_report.json", rep.dump(2) + "\n");
            return 0;
        }

        if (*sg_cmd) {
            const auto table = load_or_build(sg_cache, sg_max, sg_backend);
            const auto cps = taum::default_checkpoints(std::min(sg_max, table.x_bound()));
            const auto counts = taum::sign_counts(table, cps);
            const auto ratios = taum::theorem2_ratio(table, cps);
            const auto cor = taum::corollary_diagnostic(table, cps);
            if (!sg_out.empty()) {
                write_text(sg_out + "_plus.csv", series_csv(counts.plus.x, counts.plus.value));
                write_text(sg_out + "_minus.csv", series_csv(counts.minus.x, counts.minus.value));
                write_text(sg_out + "_ratio.csv", series_csv(ratios.x, ratios.value));
            }
            json rep;
            rep["max_x"] = cps.back();
            rep["count_plus"] = counts.plus.value.back();
            rep["count_minus"] = counts.minus.value.back();
            rep["zeros"] = counts.zeros.back();
            rep["theorem2_ratio_final"] = ratios.value.back();
            rep["cauchy_schwarz_pass"] = cor.pass;
            rep["cauchy_schwarz_worst_slack"] = cor.worst_slack;
            rep["norm_ratio_plus_final"] = cor.rows.back().norm_ratio_plus;
            rep["norm_ratio_minus_final"] = cor.rows.back().norm_ratio_minus;
            emit(sg_out.empty() ? "" : sg_out + "_report.json", rep.dump(2) + "\n");
            return cor.pass ? 0 : 1;
        }

        if (*st_cmd) {
            const auto table = load_or_build(st_cache, st_max, st_backend);
            const uint64_t bound = std::min(st_max, table.x_bound());
            const auto spf = taum::smallest_prime_factor_sieve(bound);
            const auto st = taum::sato_tate_stats(table, spf, bound, st_bins);
            std::string hist = "bin_low,bin_high,count\n";
            char buf[96];
            for (int b = 0; b < st.bins; ++b) {
                std::snprintf(buf, sizeof(buf), "%.6f,%.6f,%llu\n",
                              b * std::numbers::pi / st.bins,
                              (b + 1) * std::numbers::pi / st.bins,
                              (unsigned long long)st.histogram[b]);
                hist += buf;
            }
            if (!st_out.empty()) write_text(st_out + "_hist.csv", hist);
            json rep;
            rep["primes"] = st.prime_count;
            rep["bins"] = st.bins;
            rep["ks"] = st.ks;
            emit(st_out.empty() ? "" : st_out + "_report.json", rep.dump(2) + "\n");
            return 0;
        }

        if (*verify_cmd) {
            vopts.threads = g_threads;
            const auto summary = taum::run_verification_suite(vopts, std::cout);
            return summary.pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}

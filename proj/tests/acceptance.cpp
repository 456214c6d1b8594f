#include "cesaro/cli.hpp"
#include "cesaro/experiments.hpp"
#include "cesaro/hadamard.hpp"
#include "cesaro/random.hpp"
#include "cesaro/seminorms.hpp"
#include "cesaro/specfun.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace cesaro;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

MeasureOnCircle family(Rng& rng, int pick) {
    switch (pick) {
    case 0:
        return MeasureOnCircle::lebesgue();
    case 1:
        return MeasureOnCircle::dirac(rng.unit_circle());
    default:
        return 0.3 * MeasureOnCircle::dirac(1.0) + 0.7 * MeasureOnCircle::lebesgue();
    }
}

ExperimentConfig quiet(Subcommand sub) {
    auto cfg = default_config(sub);
    cfg.timestamp = false;
    return cfg;
}

void add_failures(Outcome& o, const ExperimentResult& r) {
    for (const auto& f : r.failures) {
        o.require(false, f);
    }
}

Outcome identity_suite() {
    Outcome o;
    const auto r = run_identities(quiet(Subcommand::identities));
    add_failures(o, r);
    o.detail = o.pass ? std::to_string(r.table.rows().size()) + " identity rows within tolerance" : o.detail;
    return o;
}

Outcome oracle_equivalence() {
    Outcome o;
    Rng rng(2024);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const auto f = rng.series(static_cast<std::size_t>(rng.integer(0, 10)));
        const int m = static_cast<int>(rng.integer(1, 3));
        const auto mu = family(rng, static_cast<int>(rng.integer(0, 2)));
        const double exact = dirichlet_measure(f, mu, m).value;
        const double oracle = converged_area_oracle(f, mu, m).value;
        const double gap = std::abs(oracle - exact) / (1.0 + exact);
        worst = std::max(worst, gap);
        o.require(gap <= 1e-6, "random instance " + std::to_string(i) + " gap " + num(gap));
    }
    for (int n = 1; n <= 10; ++n) {
        const auto f = PowerSeries::monomial(static_cast<std::size_t>(n));
        const double local = dirichlet_measure(f, MeasureOnCircle::dirac(1.0), 1).value;
        const double oracle = converged_area_oracle(f, MeasureOnCircle::dirac(1.0), 1).value;
        o.require(std::abs(local - n) <= 1e-12 * n, "D_{delta_1,1}(z^" + std::to_string(n) + ") = " + num(local));
        o.require(std::abs(oracle - n) <= 1e-6 * (1.0 + n), "oracle at z^" + std::to_string(n) + " = " + num(oracle));
    }
    for (int k = 0; k <= 60; ++k) {
        for (int m = 0; m <= 6; ++m) {
            o.require(dirichlet_sigma(PowerSeries::monomial(static_cast<std::size_t>(k)), m) ==
                          static_cast<double>(integer_binomial_exact(k, m)),
                      "closed form at k=" + std::to_string(k) + " m=" + std::to_string(m));
        }
    }
    if (o.pass) {
        o.detail = "worst relative gap " + num(worst) + " over 100 instances; anchors exact";
    }
    return o;
}

Outcome boundedness() {
    Outcome o;
    const auto r = run_boundedness(quiet(Subcommand::boundedness));
    add_failures(o, r);
    Rng rng(77);
    static constexpr double kAlphas[] = {0.6, 0.75, 0.9};
    double worst = -INFINITY;
    for (int i = 0; i < 100; ++i) {
        const auto n = rng.integer(1, 256);
        const double alpha = kAlphas[rng.integer(0, 2)];
        const int m = static_cast<int>(rng.integer(1, 3));
        const auto c = cesaro_symbol(n, alpha);
        const auto mu = family(rng, static_cast<int>(rng.integer(0, 2)));
        const auto f = rng.series(static_cast<std::size_t>(rng.integer(0, n + 10)));
        const double norm = spectral_norm(build_matrix(c, m), 1e-12);
        const double lhs = dirichlet_measure(hadamard_product(c.to_series(), f), mu, m).value;
        const double rhs = norm * norm * dirichlet_measure(f, mu, m).value;
        const double excess = (lhs - rhs) / (1.0 + rhs);
        worst = std::max(worst, excess);
        o.require(excess <= 1e-8, "transfer instance " + std::to_string(i) + " excess " + num(excess));
    }
    if (o.pass) {
        o.detail = "108 sweep rows within HS bound, slopes <= 0.02; transfer max excess " + num(worst);
    }
    return o;
}

Outcome divergence() {
    Outcome o;
    const auto r = run_divergence(quiet(Subcommand::divergence));
    add_failures(o, r);
    if (o.pass) {
        double min_ratio = INFINITY;
        for (std::size_t i = 0; i < r.table.rows().size(); ++i) {
            min_ratio = std::min(min_ratio, r.table.number(i, "ratio"));
        }
        o.detail = "min norm/bound " + num(min_ratio) + "; norms at 4096 exceed norms at 256 for m = 1, 2, 3";
    }
    return o;
}

Outcome parity_remark() {
    Outcome o;
    double min_ratio = INFINITY;
    for (int m = 1; m <= 3; ++m) {
        for (std::int64_t n : {10, 50, 100}) {
            const double norm = spectral_norm(build_matrix(parity_symbol(n + 1), m), 1e-12);
            const double bound = remark_parity_lower_bound(n, m);
            min_ratio = std::min(min_ratio, norm / bound);
            o.require(norm >= bound, "n=" + std::to_string(n) + " m=" + std::to_string(m) + " norm " + num(norm) +
                                         " < " + num(bound));
        }
    }
    if (o.pass) {
        o.detail = "min norm/bound " + num(min_ratio);
    }
    return o;
}

Outcome convergence_demo() {
    Outcome o;
    const auto mu = MeasureOnCircle::dirac(1.0);
    const auto f = parse_function("power:s=1.5,N=4096", 0);
    const auto grid = power_of_two_grid(64, 4096);
    std::string summary;
    for (int m = 1; m <= 2; ++m) {
        const double d_f = dirichlet_measure(f, mu, m).value;
        std::vector<double> d, p;
        for (const auto n : grid) {
            const auto s = generalized_cesaro(f, n, 0.75);
            d.push_back(dirichlet_measure(s - f, mu, m).value);
            p.push_back(std::abs(evaluate(s, 0.5) - evaluate(f, 0.5)));
        }
        const std::string key = "m=" + std::to_string(m);
        const double rel = d.back() / d_f;
        const double drop = d.front() / d.back();
        o.require(rel < 1e-6, key + " relative D at n=N is " + num(rel) + " (needs < 1e-6)");
        o.require(drop >= 10.0, key + " drop 64->4096 is " + num(drop) + "x (needs >= 10x)");
        for (std::size_t i = 1; i < p.size(); ++i) {
            o.require(p[i] < p[i - 1], key + " pointwise residual not decreasing at n=" + std::to_string(grid[i]));
        }
        summary += (summary.empty() ? "" : "; ") + key + " rel " + num(rel) + ", drop " + num(drop) + "x";
    }
    if (o.pass) {
        o.detail = summary;
    }
    return o;
}

Outcome rkhs_bound() {
    Outcome o;
    Rng rng(555);
    double min_slack = INFINITY;
    for (int i = 0; i < 200; ++i) {
        const int m = static_cast<int>(rng.integer(1, 3));
        std::vector<Complex> c(static_cast<std::size_t>(rng.integer(m, m + 20)) + 1);
        for (std::size_t k = static_cast<std::size_t>(m); k < c.size(); ++k) {
            c[k] = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
        }
        if (c.back() == Complex{}) {
            c.back() = 1.0;
        }
        const Complex w = std::polar(0.9 * std::sqrt(rng.uniform()), rng.uniform(0.0, 2.0 * M_PI));
        const auto mu = rng.integer(0, 1) == 0 ? MeasureOnCircle::lebesgue() : MeasureOnCircle::dirac(1.0);
        const auto b = evaluation_bound(PowerSeries(c), mu, m, w);
        const double slack = b.lhs > 0.0 ? b.rhs / b.lhs : INFINITY;
        min_slack = std::min(min_slack, slack);
        o.require(slack >= 1.0, "instance " + std::to_string(i) + " slack " + num(slack));
    }
    if (o.pass) {
        o.detail = "min slack factor " + num(min_slack);
    }
    return o;
}

std::string run_to_file(const std::string& sub, const std::filesystem::path& path) {
    std::vector<std::string> args{"cesaro-lab", sub, "--no-timestamp", "--out", path.string()};
    std::vector<const char*> argv;
    for (const auto& a : args) {
        argv.push_back(a.c_str());
    }
    std::ostringstream out, err;
    run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    std::ifstream in(path, std::ios::binary);
    std::stringstream text;
    text << in.rdbuf();
    std::filesystem::remove(path);
    return text.str();
}

Outcome determinism() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path();
    for (const char* sub : {"identities", "boundedness", "divergence", "convergence", "seminorm"}) {
        const auto a = run_to_file(sub, dir / "cesaro_acceptance_a.csv");
        const auto b = run_to_file(sub, dir / "cesaro_acceptance_b.csv");
        o.require(!a.empty(), std::string(sub) + " produced no CSV");
        o.require(a == b, std::string(sub) + " CSV differs between runs");
    }
    if (o.pass) {
        o.detail = "all five subcommands byte-identical across two runs";
    }
    return o;
}

} // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double time_limit;  // seconds, 0 when unbounded
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "identity suite", 30.0, identity_suite},
        {2, "oracle equivalence", 120.0, oracle_equivalence},
        {3, "boundedness for alpha > 1/2", 600.0, boundedness},
        {4, "divergence at alpha = 1/2", 600.0, divergence},
        {5, "parity symbol lower bound", 0.0, parity_remark},
        {6, "convergence demo", 0.0, convergence_demo},
        {7, "evaluation bound", 0.0, rkhs_bound},
        {8, "determinism", 0.0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.time_limit > 0.0) {
            o.require(seconds < c.time_limit, "runtime " + num(seconds) + " s exceeds " + num(c.time_limit) + " s");
        }
        failed += o.pass ? 0 : 1;
        std::printf("criterion %d %s: %s (%.1f s) %s\n", c.id, c.name, o.pass ? "PASS" : "FAIL", seconds,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}

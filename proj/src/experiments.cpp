#include "cesaro/experiments.hpp"

#include "cesaro/errors.hpp"
#include "cesaro/hadamard.hpp"
#include "cesaro/measures.hpp"
#include "cesaro/random.hpp"
#include "cesaro/seminorms.hpp"
#include "cesaro/specfun.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>

namespace cesaro {

namespace {

constexpr double kProp42Tol = 1e-10;
constexpr double kTelescopingTol = 1e-9;
constexpr double kSlopeLimit = 0.02;
constexpr double kPlateauLimit = 0.05;
constexpr double kPlateauMinAlpha = 0.6;
constexpr double kTransferSlack = 1e-8;
constexpr double kExactPathTol = 1e-10;
constexpr double kOracleTol = 1e-10;
constexpr std::int64_t kDecreaseFrom = 64;

std::string short_fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

template <class T>
std::string join(const std::vector<T>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) {
            out += ",";
        }
        if constexpr (std::is_floating_point_v<T>) {
            out += short_fmt(values[i]);
        } else {
            out += std::to_string(values[i]);
        }
    }
    return out;
}

std::int64_t as_int(bool b) {
    return b ? 1 : 0;
}

double l2_norm(const PowerSeries& f) {
    return std::sqrt(h2_norm_sq(f));
}

// Records a named check as a metadata line and, on failure, in the failure list.
void record_check(ExperimentResult& result, const std::string& name, bool ok, const std::string& detail) {
    result.table.add_metadata("check " + name + ": " + (ok ? "PASS" : "FAIL") + " (" + detail + ")");
    if (!ok) {
        result.failures.push_back(name + ": " + detail);
    }
}

void add_config_metadata(ExperimentTable& table, const ExperimentConfig& cfg) {
    table.add_metadata("cesaro-lab " + std::string(kLibraryVersion));
    table.add_metadata("subcommand: " + std::string(to_string(cfg.subcommand)));
    table.add_metadata("m: " + join(cfg.m_list));
    table.add_metadata("alpha: " + join(cfg.alpha_list));
    table.add_metadata("n_grid: " + join(cfg.n_grid));
    table.add_metadata("measure: " + cfg.measure_spec);
    table.add_metadata("function: " + cfg.function_spec);
    table.add_metadata("tol: " + short_fmt(cfg.tol));
    table.add_metadata("seed: " + std::to_string(cfg.seed));
    table.add_metadata("z0: " + short_fmt(cfg.z0));
    for (const auto& note : threshold_notes(cfg.subcommand)) {
        table.add_metadata("threshold: " + note);
    }
}

void add_timestamp(ExperimentTable& table) {
    const std::time_t now = std::time(nullptr);
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    table.add_metadata(std::string("timestamp: ") + buf);
}

// Least-squares slope of ln y against ln x.
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

std::map<std::string, std::string> parse_params(std::string_view body, std::string_view spec) {
    std::map<std::string, std::string> params;
    std::string text(body);
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("function spec '" + std::string(spec) + "': expected key=value, got '" + item + "'");
        }
        params[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return params;
}

double param_real(const std::map<std::string, std::string>& params, const std::string& key, std::string_view spec) {
    const auto it = params.find(key);
    if (it == params.end()) {
        throw ConfigError("function spec '" + std::string(spec) + "': missing " + key);
    }
    char* end = nullptr;
    const double v = std::strtod(it->second.c_str(), &end);
    if (end != it->second.c_str() + it->second.size() || it->second.empty() || !std::isfinite(v)) {
        throw ConfigError("function spec '" + std::string(spec) + "': bad value for " + key);
    }
    return v;
}

std::int64_t param_int(const std::map<std::string, std::string>& params, const std::string& key, std::string_view spec) {
    const double v = param_real(params, key, spec);
    if (v != std::floor(v) || v < 0 || v > 1e7) {
        throw ConfigError("function spec '" + std::string(spec) + "': " + key + " must be an integer in [0, 1e7]");
    }
    return static_cast<std::int64_t>(v);
}

void expect_keys(const std::map<std::string, std::string>& params, std::initializer_list<std::string> keys,
                 std::string_view spec) {
    for (const auto& [key, value] : params) {
        if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
            throw ConfigError("function spec '" + std::string(spec) + "': unknown parameter " + key);
        }
    }
}

PowerSeries series_from_json_text(const std::string& text) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("function JSON: ") + e.what());
    }
    if (parsed.is_array() && std::all_of(parsed.begin(), parsed.end(), [](const auto& x) { return x.is_number(); })) {
        std::vector<Complex> c;
        for (const auto& x : parsed) {
            c.emplace_back(x.template get<double>(), 0.0);
        }
        try {
            return PowerSeries(std::move(c));
        } catch (const DomainError& e) {
            throw ConfigError(e.what());
        }
    }
    return power_series_from_json(text);
}

MeasureOnCircle random_family_measure(Rng& rng, int pick) {
    switch (pick) {
    case 0:
        return MeasureOnCircle::lebesgue();
    case 1:
        return MeasureOnCircle::dirac(rng.unit_circle());
    default:
        return 0.3 * MeasureOnCircle::dirac(1.0) + 0.7 * MeasureOnCircle::lebesgue();
    }
}

std::string measure_family_name(int pick) {
    return pick == 0 ? "sigma" : pick == 1 ? "delta_lambda" : "0.3delta_1+0.7sigma";
}

void add_identity_row(ExperimentResult& result, const std::string& id, const std::string& params, double lhs,
                      double rhs, double residual, double tol, bool ok) {
    result.table.add_row({id, params, lhs, rhs, residual, tol, as_int(ok)});
}

double relative_gap(double lhs, double rhs) {
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    return scale == 0.0 ? 0.0 : std::abs(lhs - rhs) / scale;
}

// Two-path check of L^j(sigma_n^alpha f) = factor * sigma_{n-j}^alpha(L^j f).
void prop42_row(ExperimentResult& result, const PowerSeries& f, std::int64_t n, double alpha, std::int64_t j,
                int& failures) {
    const auto lhs = backward_shift(generalized_cesaro(f, n, alpha), j);
    const auto rhs = cesaro_shift_factor(n, alpha, j) * generalized_cesaro(backward_shift(f, j), n - j, alpha);
    const double scale = std::max(l2_norm(lhs), l2_norm(rhs));
    const double residual = scale == 0.0 ? 0.0 : l2_norm(lhs - rhs) / scale;
    const bool ok = residual <= kProp42Tol;
    failures += ok ? 0 : 1;
    add_identity_row(result, "shift_cesaro_commutation",
                     "n=" + std::to_string(n) + " alpha=" + short_fmt(alpha) + " j=" + std::to_string(j) +
                         " deg=" + std::to_string(f.degree().value_or(0)),
                     l2_norm(lhs), l2_norm(rhs), residual, kProp42Tol, ok);
}

void telescoping_row(ExperimentResult& result, const PowerSeries& f, const MeasureOnCircle& mu,
                     const std::string& mu_name, int j, int& failures) {
    const auto check = telescoping_check(f, mu, j, j + 1);
    const double residual = relative_gap(check.lhs, check.rhs);
    const bool ok = residual <= kTelescopingTol;
    failures += ok ? 0 : 1;
    add_identity_row(result, "telescoping_seminorm",
                     "mu=" + mu_name + " j=" + std::to_string(j) + " deg=" + std::to_string(f.degree().value_or(0)),
                     check.lhs, check.rhs, residual, kTelescopingTol, ok);
}

void write_outputs(const ExperimentResult& result, const ExperimentConfig& cfg) {
    if (cfg.out_csv) {
        emit_csv(result.table, *cfg.out_csv);
    }
    if (cfg.out_svg) {
        emit_svg(result.table, *cfg.out_svg, *default_plot(cfg.subcommand));
    }
}

void maybe_write_matrix(const ExperimentConfig& cfg, const MultiplierMatrix& matrix, bool& written) {
    if (cfg.matrix_csv && !written) {
        write_matrix_csv(matrix, *cfg.matrix_csv);
        written = true;
    }
}

} // namespace

std::string_view to_string(Subcommand sub) {
    switch (sub) {
    case Subcommand::identities:
        return "identities";
    case Subcommand::boundedness:
        return "boundedness";
    case Subcommand::divergence:
        return "divergence";
    case Subcommand::convergence:
        return "convergence";
    case Subcommand::seminorm:
        return "seminorm";
    }
    return "unknown";
}

Subcommand parse_subcommand(std::string_view name) {
    for (auto sub : {Subcommand::identities, Subcommand::boundedness, Subcommand::divergence, Subcommand::convergence,
                     Subcommand::seminorm}) {
        if (to_string(sub) == name) {
            return sub;
        }
    }
    throw ConfigError("unknown subcommand '" + std::string(name) + "'");
}

std::vector<std::int64_t> power_of_two_grid(std::int64_t n_min, std::int64_t n_max) {
    if (n_min < 1 || n_max < n_min) {
        throw ConfigError("grid needs 1 <= nmin <= nmax");
    }
    std::vector<std::int64_t> grid;
    for (std::int64_t n = 1; n <= n_max; n *= 2) {
        if (n >= n_min) {
            grid.push_back(n);
        }
    }
    if (grid.empty() || grid.back() != n_max) {
        grid.push_back(n_max);
    }
    return grid;
}

ExperimentConfig default_config(Subcommand sub) {
    ExperimentConfig cfg;
    cfg.subcommand = sub;
    cfg.m_list = {1, 2, 3};
    cfg.alpha_list = {0.5, 0.6, 0.75, 0.9};
    cfg.n_grid = power_of_two_grid(1, 2048);
    cfg.measure_spec = "sigma";
    cfg.function_spec = "random:N=20";
    cfg.tol = 1e-9;
    switch (sub) {
    case Subcommand::identities:
        cfg.seed = 1;
        break;
    case Subcommand::boundedness:
        cfg.alpha_list = {0.6, 0.75, 0.9};
        cfg.measure_spec = "mix:0.3*delta:0+0.7*sigma";
        break;
    case Subcommand::divergence:
        cfg.alpha_list = {0.5};
        cfg.n_grid = power_of_two_grid(4, 4096);
        break;
    case Subcommand::convergence:
        cfg.m_list = {1, 2};
        cfg.alpha_list = {0.75};
        cfg.n_grid = power_of_two_grid(1, 4096);
        cfg.measure_spec = "delta:0";
        cfg.function_spec = "power:s=1.5,N=4096";
        cfg.tol = 1e-6;
        break;
    case Subcommand::seminorm:
        cfg.m_list = {1};
        cfg.measure_spec = "delta:0";
        cfg.function_spec = "monomial:k=3";
        cfg.tol = 1e-6;
        break;
    }
    return cfg;
}

void validate(const ExperimentConfig& cfg) {
    if (cfg.m_list.empty()) {
        throw ConfigError("m list is empty");
    }
    for (const int m : cfg.m_list) {
        if (m < 1) {
            throw ConfigError("m must be >= 1, got " + std::to_string(m));
        }
    }
    if (cfg.alpha_list.empty()) {
        throw ConfigError("alpha list is empty");
    }
    for (const double a : cfg.alpha_list) {
        if (!(a >= 0.0) || !std::isfinite(a)) {
            throw ConfigError("alpha must be a finite real >= 0, got " + short_fmt(a));
        }
        if (cfg.subcommand == Subcommand::boundedness && !(a > 0.5 && a < 1.0)) {
            throw ConfigError("boundedness needs alpha in (1/2, 1), got " + short_fmt(a));
        }
    }
    if (cfg.n_grid.empty()) {
        throw ConfigError("n grid is empty");
    }
    for (std::size_t i = 0; i < cfg.n_grid.size(); ++i) {
        if (cfg.n_grid[i] < 1) {
            throw ConfigError("n grid entries must be positive");
        }
        if (i > 0 && cfg.n_grid[i] <= cfg.n_grid[i - 1]) {
            throw ConfigError("n grid must be strictly increasing");
        }
    }
    if (!(cfg.tol > 0.0) || !std::isfinite(cfg.tol)) {
        throw ConfigError("tol must be positive");
    }
    if (cfg.out_svg && !default_plot(cfg.subcommand)) {
        throw ConfigError("--svg is not available for subcommand " + std::string(to_string(cfg.subcommand)));
    }
    if (!(std::abs(cfg.z0) < 1.0)) {
        throw ConfigError("z0 must lie in the open unit disc");
    }
}

PowerSeries parse_function(std::string_view spec, std::uint64_t seed) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw ConfigError("function spec '" + std::string(spec) + "': expected <family>:<parameters>");
    }
    const auto family = spec.substr(0, colon);
    const auto body = spec.substr(colon + 1);
    if (family == "poly") {
        return series_from_json_text(std::string(body));
    }
    if (family == "file") {
        std::ifstream in{std::string(body)};
        if (!in) {
            throw ConfigError("cannot read function file: " + std::string(body));
        }
        return series_from_json_text(std::string(std::istreambuf_iterator<char>(in), {}));
    }
    const auto params = parse_params(body, spec);
    if (family == "power") {
        expect_keys(params, {"s", "N"}, spec);
        const double s = param_real(params, "s", spec);
        const auto N = param_int(params, "N", spec);
        std::vector<Complex> c(static_cast<std::size_t>(N) + 1);
        for (std::int64_t k = 0; k <= N; ++k) {
            c[static_cast<std::size_t>(k)] = std::pow(static_cast<double>(k + 1), -s);
        }
        return PowerSeries(std::move(c));
    }
    if (family == "monomial") {
        expect_keys(params, {"k"}, spec);
        return PowerSeries::monomial(static_cast<std::size_t>(param_int(params, "k", spec)));
    }
    if (family == "random") {
        expect_keys(params, {"N"}, spec);
        Rng rng(seed);
        return rng.series(static_cast<std::size_t>(param_int(params, "N", spec)));
    }
    throw ConfigError("function spec '" + std::string(spec) + "': unknown family '" + std::string(family) + "'");
}

int ExperimentResult::exit_code() const {
    if (nonconverged) {
        return 3;
    }
    return failures.empty() ? 0 : 1;
}

std::vector<std::string> threshold_notes(Subcommand sub) {
    switch (sub) {
    case Subcommand::identities:
        return {"shift/Cesaro commutation relative residual <= 1e-10",
                "telescoping seminorm relative residual <= 1e-9",
                "binomial sum identity exact (integer arithmetic)",
                "Gamma-ratio asymptotics |k^(b-a) Gamma(k+a)/Gamma(k+b) - 1| <= 10/k",
                "Gamma-ratio partial sum <= C1^2/(2 alpha - 1) (n+1)^(2 alpha - 1)"};
    case Subcommand::boundedness:
        return {"norm <= max|a_ii| + sqrt(sum_{i<j}|a_ij|^2) for every row",
                "log-log slope of the norm over n in [256, 2048] <= 0.02 (artifact threshold)",
                "running sup over the grid exceeds the sup over n <= nmax/2 by <= 5% for alpha >= 0.6 "
                "(artifact threshold)",
                "transfer D(h_n * f) <= norm^2 D(f) + 1e-8 max(1, rhs)"};
    case Subcommand::divergence:
        return {"norm / (2^-(m+1) sqrt(ln(2 + n/2))) >= 1 for every row",
                "norm at the largest n > norm at n = 256 when the grid reaches 4096"};
    case Subcommand::convergence:
        return {"max_n D(sigma_n f)/D(f) <= max_n norm^2 + 1e-8",
                "D(sigma_n f - f) non-increasing for n >= 64",
                "pointwise residual at z0 non-increasing for n >= 64",
                "relative D(sigma_n f - f) < tol at the largest n once n >= deg f"};
    case Subcommand::seminorm:
        return {"exact paths agree with the mixture path to 1e-10 (1 + value)",
                "area oracle agrees with the mixture path to tol (1 + value)"};
    }
    return {};
}

std::optional<PlotSpec> default_plot(Subcommand sub) {
    switch (sub) {
    case Subcommand::boundedness:
        return PlotSpec{"n", {"norm"}, {"alpha", "m"}, "Operator norm of the Cesaro multiplier matrix", false};
    case Subcommand::divergence:
        return PlotSpec{"n", {"norm", "lower_bound"}, {"m"}, "Square-root Fejer multiplier norm vs lower bound",
                        false};
    case Subcommand::convergence:
        return PlotSpec{"n", {"relative_D_diff"}, {"alpha", "m"}, "Relative seminorm of sigma_n f - f", true};
    case Subcommand::identities:
    case Subcommand::seminorm:
        return std::nullopt;
    }
    return std::nullopt;
}

ExperimentResult run_identities(const ExperimentConfig& cfg) {
    ExperimentResult result{ExperimentTable({"identity", "params", "lhs", "rhs", "residual", "tol", "pass"}), {}, false};
    add_config_metadata(result.table, cfg);
    Rng rng(cfg.seed);

    // Shift/Cesaro commutation: anchor then random instances.
    int prop_fail = 0;
    {
        Rng anchor(1);
        prop42_row(result, anchor.series(8), 5, 0.5, 2, prop_fail);
    }
    static constexpr double kAlphas[] = {0.0, 0.25, 0.5, 0.75, 1.0, 2.0};
    for (int i = 0; i < 500; ++i) {
        const auto n = rng.integer(1, 60);
        const double alpha = kAlphas[rng.integer(0, 5)];
        const auto j = rng.integer(1, n);
        const auto f = rng.series(static_cast<std::size_t>(rng.integer(0, 70)));
        prop42_row(result, f, n, alpha, j, prop_fail);
    }
    record_check(result, "shift_cesaro_commutation", prop_fail == 0, std::to_string(prop_fail) + " of 501 rows fail");

    // Telescoping seminorm identity: anchor then random instances.
    int tele_fail = 0;
    telescoping_row(result, PowerSeries::monomial(2), MeasureOnCircle::lebesgue(), "sigma", 0, tele_fail);
    for (int i = 0; i < 200; ++i) {
        const int pick = static_cast<int>(rng.integer(0, 2));
        const auto mu = random_family_measure(rng, pick);
        const int j = static_cast<int>(rng.integer(0, 3));
        const auto f = rng.series(static_cast<std::size_t>(rng.integer(0, 40)));
        telescoping_row(result, f, mu, measure_family_name(pick), j, tele_fail);
    }
    record_check(result, "telescoping_seminorm", tele_fail == 0, std::to_string(tele_fail) + " of 201 rows fail");

    // sum_{i=m-1}^{j-1} C(i, m-1) = C(j, m), exact.
    int binom_fail = 0;
    for (int m = 1; m <= 6; ++m) {
        for (int j = m; j <= 60; ++j) {
            std::uint64_t sum = 0;
            for (int i = m - 1; i <= j - 1; ++i) {
                sum += integer_binomial_exact(i, m - 1);
            }
            const auto target = integer_binomial_exact(j, m);
            const bool ok = sum == target;
            binom_fail += ok ? 0 : 1;
            add_identity_row(result, "binomial_sum", "j=" + std::to_string(j) + " m=" + std::to_string(m),
                             static_cast<double>(sum), static_cast<double>(target), ok ? 0.0 : 1.0, 0.0, ok);
        }
    }
    record_check(result, "binomial_sum", binom_fail == 0, std::to_string(binom_fail) + " rows fail");

    // k^(b-a) Gamma(k+a)/Gamma(k+b) -> 1.
    int stirling_fail = 0;
    static constexpr double kPairs[][2] = {{0.6, 1.0}, {0.75, 1.0}, {0.9, 1.0}, {0.5, 2.0}, {1.5, 0.25}};
    for (const auto& [a, b] : kPairs) {
        for (const double k : {1e4, 1e5, 1e6}) {
            const double value = std::exp((b - a) * std::log(k) + log_gamma(k + a) - log_gamma(k + b));
            const double residual = std::abs(value - 1.0);
            const bool ok = residual <= 10.0 / k;
            stirling_fail += ok ? 0 : 1;
            add_identity_row(result, "gamma_ratio_limit",
                             "k=" + short_fmt(k) + " a=" + short_fmt(a) + " b=" + short_fmt(b), value, 1.0, residual,
                             10.0 / k, ok);
        }
    }
    record_check(result, "gamma_ratio_limit", stirling_fail == 0, std::to_string(stirling_fail) + " rows fail");

    // sum_{j<=n} Gamma(j+alpha)^2/Gamma(j+1)^2 <= C1^2/(2 alpha - 1) (n+1)^(2 alpha - 1).
    int sum_fail = 0;
    for (const double alpha : {0.6, 0.75, 0.9}) {
        for (const std::int64_t n : {10, 100, 1000, 10000}) {
            const double lhs = gamma_ratio_partial_sum(n, alpha);
            const double c1 = gamma_ratio_power_sup(n, alpha);
            const double rhs = c1 * c1 / (2.0 * alpha - 1.0) * std::pow(static_cast<double>(n + 1), 2.0 * alpha - 1.0);
            const double violation = std::max(0.0, lhs - rhs) / rhs;
            const bool ok = lhs <= rhs;
            sum_fail += ok ? 0 : 1;
            add_identity_row(result, "gamma_ratio_partial_sum",
                             "n=" + std::to_string(n) + " alpha=" + short_fmt(alpha) + " C1=" + short_fmt(c1), lhs,
                             rhs, violation, 0.0, ok);
        }
    }
    record_check(result, "gamma_ratio_partial_sum", sum_fail == 0, std::to_string(sum_fail) + " rows fail");
    return result;
}

ExperimentResult run_boundedness(const ExperimentConfig& cfg) {
    ExperimentResult result{ExperimentTable({"alpha", "m", "n", "dim", "norm", "hs_bound", "hs_bound_no_root",
                                             "strict_upper_sq", "strict_upper_chain", "strict_upper_relaxed",
                                             "running_sup", "transfer_lhs", "transfer_rhs", "pass"}),
                            {},
                            false};
    add_config_metadata(result.table, cfg);
    const auto mu = parse_measure(cfg.measure_spec);
    Rng rng(cfg.seed);
    bool matrix_written = false;
    int row_fail = 0;
    const std::int64_t n_max = cfg.n_grid.back();
    for (const double alpha : cfg.alpha_list) {
        for (const int m : cfg.m_list) {
            double running = 0.0;
            double half_sup = 0.0;
            std::vector<double> xs, ys;
            for (const auto n : cfg.n_grid) {
                const auto c = cesaro_symbol(n, alpha);
                const auto matrix = build_matrix(c, m);
                maybe_write_matrix(cfg, matrix, matrix_written);
                const double norm = spectral_norm(matrix, cfg.tol);
                const auto hs = hs_bounds(matrix);
                running = std::max(running, norm);
                if (2 * n <= n_max) {
                    half_sup = std::max(half_sup, norm);
                }
                if (n >= 256 && n <= 2048) {
                    xs.push_back(static_cast<double>(n));
                    ys.push_back(norm);
                }
                const auto f = rng.series(static_cast<std::size_t>(rng.integer(0, n + 5)));
                const double lhs = dirichlet_measure(hadamard_product(c.to_series(), f), mu, m).value;
                const double rhs = norm * norm * dirichlet_measure(f, mu, m).value;
                const bool hs_ok = norm <= hs.hilbert_schmidt() * (1.0 + 1e-12) + 1e-14;
                const bool transfer_ok = lhs <= rhs + kTransferSlack * std::max(1.0, rhs);
                const bool ok = hs_ok && transfer_ok;
                row_fail += ok ? 0 : 1;
                if (!ok) {
                    result.failures.push_back("row alpha=" + short_fmt(alpha) + " m=" + std::to_string(m) +
                                              " n=" + std::to_string(n) + (hs_ok ? "" : " norm exceeds HS bound") +
                                              (transfer_ok ? "" : " transfer inequality violated"));
                }
                result.table.add_row({alpha, static_cast<std::int64_t>(m), n, static_cast<std::int64_t>(matrix.dim()),
                                      norm, hs.hilbert_schmidt(), hs.without_root(), hs.strict_upper_sq,
                                      cesaro_strict_upper_sq(n, alpha, m), cesaro_strict_upper_relaxed(n, alpha, m),
                                      running, lhs, rhs, as_int(ok)});
            }
            const std::string key = "alpha=" + short_fmt(alpha) + " m=" + std::to_string(m);
            if (xs.size() >= 2) {
                const double slope = log_log_slope(xs, ys);
                record_check(result, "slope " + key, slope <= kSlopeLimit,
                             "slope " + short_fmt(slope) + " over n in [256, 2048], limit 0.02");
            }
            if (alpha >= kPlateauMinAlpha && half_sup > 0.0) {
                const double growth = (running - half_sup) / half_sup;
                record_check(result, "plateau " + key, growth <= kPlateauLimit,
                             "sup growth " + short_fmt(growth) + " beyond n = nmax/2, limit 0.05");
            }
        }
    }
    record_check(result, "rows", row_fail == 0, std::to_string(row_fail) + " rows fail");
    return result;
}

ExperimentResult run_divergence(const ExperimentConfig& cfg) {
    ExperimentResult result{ExperimentTable({"m", "n", "dim", "norm", "lower_bound", "ratio", "pass"}), {}, false};
    add_config_metadata(result.table, cfg);
    bool matrix_written = false;
    int row_fail = 0;
    for (const int m : cfg.m_list) {
        std::optional<double> at256;
        double last = 0.0;
        for (const auto n : cfg.n_grid) {
            const auto matrix = build_matrix(sqrt_fejer_symbol(n), m);
            maybe_write_matrix(cfg, matrix, matrix_written);
            const double norm = spectral_norm(matrix, cfg.tol);
            const double bound = paq_lower_bound(n, m);
            const double ratio = norm / bound;
            const bool ok = ratio >= 1.0;
            row_fail += ok ? 0 : 1;
            if (n == 256) {
                at256 = norm;
            }
            last = norm;
            result.table.add_row({static_cast<std::int64_t>(m), n, static_cast<std::int64_t>(matrix.dim()), norm,
                                  bound, ratio, as_int(ok)});
        }
        if (at256 && cfg.n_grid.back() >= 4096) {
            record_check(result, "growth m=" + std::to_string(m), last > *at256,
                         "norm " + short_fmt(last) + " at n=" + std::to_string(cfg.n_grid.back()) + " vs " +
                             short_fmt(*at256) + " at n=256");
        }
    }
    record_check(result, "lower_bound", row_fail == 0, std::to_string(row_fail) + " rows below the bound");
    return result;
}

ExperimentResult run_convergence(const ExperimentConfig& cfg) {
    ExperimentResult result{ExperimentTable({"alpha", "m", "n", "D_diff", "relative_D_diff", "norm_sq_diff",
                                             "pointwise_residual", "D_ratio", "multiplier_norm_sq"}),
                            {},
                            false};
    add_config_metadata(result.table, cfg);
    const auto mu = parse_measure(cfg.measure_spec);
    const auto f = parse_function(cfg.function_spec, cfg.seed);
    const auto deg = static_cast<std::int64_t>(f.degree().value_or(0));
    const Complex z0(cfg.z0, 0.0);
    const Complex f_z0 = evaluate(f, z0);
    for (const double alpha : cfg.alpha_list) {
        for (const int m : cfg.m_list) {
            const double d_f = dirichlet_measure(f, mu, m).value;
            double max_ratio = 0.0;
            double max_norm_sq = 0.0;
            bool d_monotone = true;
            bool p_monotone = true;
            double prev_d = 0.0;
            double prev_p = 0.0;
            bool have_prev = false;
            double last_rel = 0.0;
            std::int64_t last_n = 0;
            for (const auto n : cfg.n_grid) {
                const auto s = generalized_cesaro(f, n, alpha);
                const auto diff = s - f;
                const double d_diff = dirichlet_measure(diff, mu, m).value;
                const double rel = d_f > 0.0 ? d_diff / d_f : 0.0;
                const double norm_sq = space_norm_sq(diff, mu, m);
                const double pointwise = std::abs(evaluate(s, z0) - f_z0);
                const double ratio = d_f > 0.0 ? dirichlet_measure(s, mu, m).value / d_f : 0.0;
                const double mult = spectral_norm(build_matrix(cesaro_symbol(n, alpha), m), 1e-9);
                max_ratio = std::max(max_ratio, ratio);
                max_norm_sq = std::max(max_norm_sq, mult * mult);
                if (n >= kDecreaseFrom) {
                    if (have_prev) {
                        d_monotone = d_monotone && d_diff <= prev_d;
                        p_monotone = p_monotone && pointwise <= prev_p;
                    }
                    prev_d = d_diff;
                    prev_p = pointwise;
                    have_prev = true;
                }
                last_rel = rel;
                last_n = n;
                result.table.add_row({alpha, static_cast<std::int64_t>(m), n, d_diff, rel, norm_sq, pointwise, ratio,
                                      mult * mult});
            }
            const std::string key = "alpha=" + short_fmt(alpha) + " m=" + std::to_string(m);
            record_check(result, "uniform_bound " + key, max_ratio <= max_norm_sq + 1e-8,
                         "max D ratio " + short_fmt(max_ratio) + " vs max norm^2 " + short_fmt(max_norm_sq));
            record_check(result, "seminorm_decrease " + key, d_monotone, "D(sigma_n f - f) for n >= 64");
            record_check(result, "pointwise_decrease " + key, p_monotone, "residual at z0 for n >= 64");
            if (last_n >= deg) {
                record_check(result, "reach_tol " + key, last_rel < cfg.tol,
                             "relative D " + short_fmt(last_rel) + " at n=" + std::to_string(last_n) + ", tol " +
                                 short_fmt(cfg.tol));
            }
        }
    }
    return result;
}

ExperimentResult run_seminorm(const ExperimentConfig& cfg) {
    ExperimentResult result{ExperimentTable({"m", "method", "status", "value", "error_estimate", "residual", "tol",
                                             "pass"}),
                            {},
                            false};
    add_config_metadata(result.table, cfg);
    const auto mu = parse_measure(cfg.measure_spec);
    const auto f = parse_function(cfg.function_spec, cfg.seed);
    const bool pure_lebesgue = mu.atoms().empty() && !mu.has_density();
    const bool pure_atoms = mu.lebesgue_mass() == 0.0 && !mu.has_density();
    for (const int m : cfg.m_list) {
        const auto mixture = dirichlet_measure(f, mu, m);
        const double ref = mixture.value;
        auto add = [&](SeminormMethod method, const std::string& status, double value, double err, double tol,
                       bool compare) {
            const double residual = compare ? std::abs(value - ref) / (1.0 + std::abs(ref)) : 0.0;
            const bool ok = status == "ok" && residual <= tol;
            if (!ok) {
                result.failures.push_back("m=" + std::to_string(m) + " " + std::string(to_string(method)) + ": " +
                                          status + " residual " + short_fmt(residual));
            }
            result.table.add_row({static_cast<std::int64_t>(m), std::string(to_string(method)), status, value, err,
                                  residual, tol, as_int(ok)});
        };
        add(SeminormMethod::measure_mixture, "ok", ref, mixture.error_estimate, kExactPathTol, false);
        if (pure_lebesgue) {
            add(SeminormMethod::closed_form_sigma, "ok", mu.lebesgue_mass() * dirichlet_sigma(f, m), 0.0,
                kExactPathTol, true);
        }
        if (pure_atoms) {
            double sum = 0.0;
            for (const auto& atom : mu.atoms()) {
                sum += atom.mass * dirichlet_point(f, atom.point, m);
            }
            add(SeminormMethod::local_douglas, "ok", sum, 0.0, kExactPathTol, true);
        }
        try {
            const auto oracle = converged_area_oracle(f, mu, m, 16, 0, kOracleTol);
            add(SeminormMethod::area_quadrature, "ok", oracle.value, oracle.error_estimate, cfg.tol, true);
        } catch (const ConvergenceError& e) {
            result.nonconverged = true;
            add(SeminormMethod::area_quadrature, "nonconverged", e.best_estimate(), 0.0, cfg.tol, true);
        }
    }
    record_check(result, "paths_agree", result.failures.empty(),
                 std::to_string(result.failures.size()) + " path disagreements");
    return result;
}

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    validate(cfg);
    ExperimentResult result;
    switch (cfg.subcommand) {
    case Subcommand::identities:
        result = run_identities(cfg);
        break;
    case Subcommand::boundedness:
        result = run_boundedness(cfg);
        break;
    case Subcommand::divergence:
        result = run_divergence(cfg);
        break;
    case Subcommand::convergence:
        result = run_convergence(cfg);
        break;
    case Subcommand::seminorm:
        result = run_seminorm(cfg);
        break;
    }
    if (cfg.timestamp) {
        add_timestamp(result.table);
    }
    write_outputs(result, cfg);
    return result;
}

} // namespace cesaro

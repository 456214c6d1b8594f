#include "cesaro/series.hpp"

#include "cesaro/errors.hpp"
#include "cesaro/specfun.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>

namespace cesaro {

namespace {

Complex horner(std::span<const Complex> a, Complex z) {
    Complex acc{};
    for (auto it = a.rbegin(); it != a.rend(); ++it) {
        acc = acc * z + *it;
    }
    return acc;
}

void require_on_circle(Complex lambda, const char* where) {
    if (!(std::abs(std::abs(lambda) - 1.0) <= kUnitCircleTol)) {
        throw DomainError(std::string(where) + ": point must lie on the unit circle");
    }
}

} // namespace

PowerSeries::PowerSeries(std::vector<Complex> coefficients) : coefficients_(std::move(coefficients)) {
    for (const auto& c : coefficients_) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw DomainError("PowerSeries: coefficients must be finite");
        }
    }
    trim();
}

PowerSeries::PowerSeries(std::initializer_list<Complex> coefficients)
    : PowerSeries(std::vector<Complex>(coefficients)) {}

PowerSeries PowerSeries::monomial(std::size_t power, Complex value) {
    std::vector<Complex> c(power + 1);
    c[power] = value;
    return PowerSeries(std::move(c));
}

std::optional<std::size_t> PowerSeries::degree() const noexcept {
    if (coefficients_.empty()) {
        return std::nullopt;
    }
    return coefficients_.size() - 1;
}

PowerSeries& PowerSeries::operator+=(const PowerSeries& other) {
    if (other.size() > size()) {
        coefficients_.resize(other.size());
    }
    for (std::size_t k = 0; k < other.size(); ++k) {
        coefficients_[k] += other.coefficients_[k];
    }
    trim();
    return *this;
}

PowerSeries& PowerSeries::operator-=(const PowerSeries& other) {
    if (other.size() > size()) {
        coefficients_.resize(other.size());
    }
    for (std::size_t k = 0; k < other.size(); ++k) {
        coefficients_[k] -= other.coefficients_[k];
    }
    trim();
    return *this;
}

PowerSeries& PowerSeries::operator*=(Complex scale) {
    for (auto& c : coefficients_) {
        c *= scale;
    }
    trim();
    return *this;
}

void PowerSeries::trim() {
    while (!coefficients_.empty() && coefficients_.back() == Complex{}) {
        coefficients_.pop_back();
    }
}

Complex evaluate(const PowerSeries& f, Complex z) {
    if (!(std::abs(z) < 1.0)) {
        throw DomainError("evaluate: |z| must be < 1");
    }
    return horner(f.coefficients(), z);
}

Complex evaluate_on_circle(const PowerSeries& f, Complex zeta) {
    require_on_circle(zeta, "evaluate_on_circle");
    return horner(f.coefficients(), zeta);
}

PowerSeries derivative(const PowerSeries& f, int m) {
    if (m < 0) {
        throw DomainError("derivative: order must be nonnegative");
    }
    const auto order = static_cast<std::size_t>(m);
    if (f.size() <= order) {
        return {};
    }
    std::vector<Complex> out(f.size() - order);
    for (std::size_t j = order; j < f.size(); ++j) {
        // Gamma(j+1)/Gamma(j-m+1) as a falling factorial.
        double falling = 1.0;
        for (std::size_t i = 0; i < order; ++i) {
            falling *= static_cast<double>(j - i);
        }
        out[j - order] = falling * f[j];
    }
    return PowerSeries(std::move(out));
}

PowerSeries hadamard_product(const PowerSeries& f, const PowerSeries& g) {
    const auto n = std::min(f.size(), g.size());
    std::vector<Complex> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        out[j] = f[j] * g[j];
    }
    return PowerSeries(std::move(out));
}

PowerSeries partial_sum(const PowerSeries& f, std::int64_t n) {
    if (n < 0) {
        throw DomainError("partial_sum: n must be nonnegative");
    }
    const auto keep = std::min(f.size(), static_cast<std::size_t>(n) + 1);
    auto c = f.coefficients().first(keep);
    return PowerSeries(std::vector<Complex>(c.begin(), c.end()));
}

CesaroWeights cesaro_weights(std::int64_t n, double alpha) {
    if (n < 0 || !(alpha >= 0.0)) {
        throw DomainError("cesaro_weights: need n >= 0 and alpha >= 0");
    }
    CesaroWeights w{n, alpha, std::vector<double>(static_cast<std::size_t>(n) + 1)};
    w.weights[0] = 1.0;
    for (std::int64_t k = 1; k <= n; ++k) {
        const auto top = static_cast<double>(n - k + 1);
        w.weights[static_cast<std::size_t>(k)] = w.weights[static_cast<std::size_t>(k - 1)] * top / (top + alpha);
    }
    return w;
}

PowerSeries generalized_cesaro(const PowerSeries& f, std::int64_t n, double alpha) {
    const auto w = cesaro_weights(n, alpha);
    const auto len = std::min(f.size(), w.weights.size());
    std::vector<Complex> out(len);
    for (std::size_t k = 0; k < len; ++k) {
        out[k] = w.weights[k] * f[k];
    }
    return PowerSeries(std::move(out));
}

PowerSeries backward_shift(const PowerSeries& f) {
    return backward_shift(f, 1);
}

PowerSeries backward_shift(const PowerSeries& f, std::int64_t times) {
    if (times < 0) {
        throw DomainError("backward_shift: power must be nonnegative");
    }
    const auto shift = static_cast<std::size_t>(times);
    if (f.size() <= shift) {
        return {};
    }
    auto c = f.coefficients().subspan(shift);
    return PowerSeries(std::vector<Complex>(c.begin(), c.end()));
}

LocalShiftDecomposition local_shift(const PowerSeries& f, Complex lambda) {
    require_on_circle(lambda, "local_shift");
    if (f.size() <= 1) {
        return {f[0], PowerSeries{}, lambda};
    }
    const auto top = f.size() - 1;
    std::vector<Complex> b(top);
    b[top - 1] = f[top];
    for (std::size_t k = top - 1; k >= 1; --k) {
        b[k - 1] = f[k] + lambda * b[k];
    }
    const Complex constant = f[0] + lambda * b[0];
    return {constant, PowerSeries(std::move(b)), lambda};
}

PowerSeries reconstruct(const LocalShiftDecomposition& d) {
    const auto& g = d.quotient;
    std::vector<Complex> out(g.size() + 1);
    out[0] = d.constant;
    for (std::size_t j = 0; j < g.size(); ++j) {
        out[j + 1] += g[j];
        out[j] -= d.base_point * g[j];
    }
    return PowerSeries(std::move(out));
}

double cesaro_shift_factor(std::int64_t n, double alpha, std::int64_t j) {
    if (j < 1 || j > n || !(alpha >= 0.0)) {
        throw DomainError("cesaro_shift_factor: need 1 <= j <= n and alpha >= 0");
    }
    const auto nd = static_cast<double>(n);
    const auto jd = static_cast<double>(j);
    return std::exp(log_gamma(nd + 1.0) + log_gamma(nd + alpha - jd + 1.0) - log_gamma(nd - jd + 1.0) -
                    log_gamma(nd + alpha + 1.0));
}

PowerSeries rotate(const PowerSeries& f, Complex lambda) {
    std::vector<Complex> out(f.size());
    Complex power = 1.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        out[k] = f[k] * power;
        power *= lambda;
    }
    return PowerSeries(std::move(out));
}

std::string to_json(const PowerSeries& f) {
    auto array = nlohmann::json::array();
    for (const auto& c : f.coefficients()) {
        array.push_back({c.real(), c.imag()});
    }
    return array.dump();
}

PowerSeries power_series_from_json(std::string_view text) {
    nlohmann::json parsed;
    try {
        parsed = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError(std::string("power series JSON: ") + e.what());
    }
    if (!parsed.is_array()) {
        throw ConfigError("power series JSON: expected a list of [re, im] pairs");
    }
    std::vector<Complex> c;
    c.reserve(parsed.size());
    for (const auto& pair : parsed) {
        if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number() || !pair[1].is_number()) {
            throw ConfigError("power series JSON: each entry must be [re, im]");
        }
        c.emplace_back(pair[0].get<double>(), pair[1].get<double>());
    }
    try {
        return PowerSeries(std::move(c));
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
}

} // namespace cesaro

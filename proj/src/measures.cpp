#include "cesaro/measures.hpp"

#include "cesaro/errors.hpp"

#include <json.hpp>

#include <cmath>
#include <numbers>
#include <string>

namespace cesaro {

namespace {

constexpr double kDensityNegTol = -1e-10;

double parse_number(std::string_view text, std::string_view context) {
    std::string s(text);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used == 0 || used != s.size() || !std::isfinite(value)) {
        throw ConfigError("measure spec: bad number '" + s + "' in " + std::string(context));
    }
    return value;
}

// Splits on '+' outside brackets, leaving exponent signs such as "1e+3" alone.
std::vector<std::string_view> split_terms(std::string_view text) {
    std::vector<std::string_view> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        const char ch = text[i];
        if (ch == '[') {
            ++depth;
        } else if (ch == ']') {
            --depth;
        } else if (ch == '+' && depth == 0 && !(i > 0 && (text[i - 1] == 'e' || text[i - 1] == 'E'))) {
            out.push_back(text.substr(start, i - start));
            start = i + 1;
        }
    }
    out.push_back(text.substr(start));
    return out;
}

MeasureOnCircle parse_density(std::string_view body) {
    nlohmann::json list;
    try {
        list = nlohmann::json::parse(body);
    } catch (const nlohmann::json::parse_error&) {
        throw ConfigError("measure spec: density expects a JSON list [d0,d1re,d1im,...]");
    }
    if (!list.is_array() || list.empty() || list.size() % 2 == 0) {
        throw ConfigError("measure spec: density list must have odd length 1 + 2K");
    }
    for (const auto& v : list) {
        if (!v.is_number()) {
            throw ConfigError("measure spec: density entries must be numbers");
        }
    }
    std::vector<Complex> d;
    d.emplace_back(list[0].get<double>(), 0.0);
    for (std::size_t i = 1; i < list.size(); i += 2) {
        d.emplace_back(list[i].get<double>(), list[i + 1].get<double>());
    }
    try {
        return MeasureOnCircle({}, 0.0, std::move(d));
    } catch (const DomainError& e) {
        throw ConfigError(std::string("measure spec: ") + e.what());
    }
}

MeasureOnCircle parse_term(std::string_view term) {
    if (term.empty()) {
        throw ConfigError("measure spec: empty term");
    }
    // "<w>*<spec>"; the weight never contains '*' or ':'.
    if (const auto star = term.find('*'); star != std::string_view::npos && star < term.find(':')) {
        const double w = parse_number(term.substr(0, star), term);
        if (w < 0.0) {
            throw ConfigError("measure spec: negative weight in '" + std::string(term) + "'");
        }
        return w * parse_term(term.substr(star + 1));
    }
    if (term == "sigma") {
        return MeasureOnCircle::lebesgue();
    }
    if (term == "zero") {
        return MeasureOnCircle::zero();
    }
    const auto colon = term.find(':');
    if (colon == std::string_view::npos) {
        throw ConfigError("measure spec: unknown measure '" + std::string(term) + "'");
    }
    const auto kind = term.substr(0, colon);
    const auto body = term.substr(colon + 1);
    if (kind == "delta") {
        return MeasureOnCircle::dirac_degrees(parse_number(body, term));
    }
    if (kind == "density") {
        return parse_density(body);
    }
    if (kind == "mix") {
        MeasureOnCircle sum;
        for (const auto part : split_terms(body)) {
            sum = sum + parse_term(part);
        }
        return sum;
    }
    throw ConfigError("measure spec: unknown measure kind '" + std::string(kind) + "'");
}

} // namespace

MeasureOnCircle::MeasureOnCircle(std::vector<Atom> atoms, double lebesgue_mass, std::vector<Complex> density)
    : atoms_(std::move(atoms)), lebesgue_mass_(lebesgue_mass), density_(std::move(density)) {
    if (!(lebesgue_mass_ >= 0.0) || !std::isfinite(lebesgue_mass_)) {
        throw DomainError("MeasureOnCircle: Lebesgue mass must be finite and nonnegative");
    }
    for (const auto& a : atoms_) {
        if (!(a.mass >= 0.0) || !std::isfinite(a.mass)) {
            throw DomainError("MeasureOnCircle: atom masses must be finite and nonnegative");
        }
        if (!(std::abs(std::abs(a.point) - 1.0) <= kUnitCircleTol)) {
            throw DomainError("MeasureOnCircle: atoms must lie on the unit circle");
        }
    }
    if (!density_.empty()) {
        for (const auto& d : density_) {
            if (!std::isfinite(d.real()) || !std::isfinite(d.imag())) {
                throw DomainError("MeasureOnCircle: density coefficients must be finite");
            }
        }
        if (density_[0].imag() != 0.0) {
            throw DomainError("MeasureOnCircle: density mean d_0 must be real");
        }
        const auto k = density_degree();
        const auto grid = 4 * k + 1;
        for (std::size_t i = 0; i < grid; ++i) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(grid);
            if (density_at(theta) < kDensityNegTol) {
                throw DomainError("MeasureOnCircle: density is negative at theta = " + std::to_string(theta));
            }
        }
    }
}

MeasureOnCircle MeasureOnCircle::dirac_degrees(double theta_degrees, double mass) {
    const double theta = theta_degrees * std::numbers::pi / 180.0;
    return dirac(std::polar(1.0, theta), mass);
}

double MeasureOnCircle::density_at(double theta) const {
    if (density_.empty()) {
        return 0.0;
    }
    double value = density_[0].real();
    for (std::size_t k = 1; k < density_.size(); ++k) {
        value += 2.0 * (density_[k] * std::polar(1.0, static_cast<double>(k) * theta)).real();
    }
    return value;
}

bool MeasureOnCircle::is_zero() const {
    if (lebesgue_mass_ != 0.0) {
        return false;
    }
    for (const auto& a : atoms_) {
        if (a.mass != 0.0) {
            return false;
        }
    }
    for (const auto& d : density_) {
        if (d != Complex{}) {
            return false;
        }
    }
    return true;
}

MeasureOnCircle operator+(const MeasureOnCircle& a, const MeasureOnCircle& b) {
    auto atoms = a.atoms_;
    atoms.insert(atoms.end(), b.atoms_.begin(), b.atoms_.end());
    auto density = a.density_;
    if (b.density_.size() > density.size()) {
        density.resize(b.density_.size());
    }
    for (std::size_t k = 0; k < b.density_.size(); ++k) {
        density[k] += b.density_[k];
    }
    return MeasureOnCircle(std::move(atoms), a.lebesgue_mass_ + b.lebesgue_mass_, std::move(density));
}

MeasureOnCircle operator*(double scale, const MeasureOnCircle& mu) {
    if (!(scale >= 0.0)) {
        throw DomainError("MeasureOnCircle: scale must be nonnegative");
    }
    auto atoms = mu.atoms_;
    for (auto& a : atoms) {
        a.mass *= scale;
    }
    auto density = mu.density_;
    for (auto& d : density) {
        d *= scale;
    }
    return MeasureOnCircle(std::move(atoms), scale * mu.lebesgue_mass_, std::move(density));
}

double total_mass(const MeasureOnCircle& mu) {
    double mass = mu.lebesgue_mass();
    for (const auto& a : mu.atoms()) {
        mass += a.mass;
    }
    if (mu.has_density()) {
        mass += mu.density()[0].real();
    }
    return mass;
}

double poisson_integral(const MeasureOnCircle& mu, Complex z) {
    const double r2 = std::norm(z);
    if (!(r2 < 1.0)) {
        throw DomainError("poisson_integral: |z| must be < 1");
    }
    double value = mu.lebesgue_mass();
    for (const auto& a : mu.atoms()) {
        value += a.mass * (1.0 - r2) / std::norm(z - a.point);
    }
    if (mu.has_density()) {
        const auto& d = mu.density();
        // Poisson extension of the trigonometric polynomial: d_0 + 2 Re sum d_k z^k.
        Complex acc{};
        for (std::size_t k = d.size() - 1; k >= 1; --k) {
            acc = (acc + d[k]) * z;
        }
        value += d[0].real() + 2.0 * acc.real();
    }
    return value;
}

MeasureOnCircle parse_measure(std::string_view spec) {
    return parse_term(spec);
}

} // namespace cesaro

#include "univalence/function.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace univalence {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::Domain: return "domain";
        case ErrorKind::Representation: return "representation";
        case ErrorKind::Validation: return "validation";
        case ErrorKind::Singularity: return "singularity";
        case ErrorKind::Inapplicable: return "inapplicable";
        case ErrorKind::Branch: return "branch";
        case ErrorKind::Pole: return "pole";
        case ErrorKind::Degenerate: return "degenerate-derivative";
        case ErrorKind::UnknownName: return "unknown-name";
        case ErrorKind::Config: return "config";
        case ErrorKind::Io: return "io";
    }
    return "unknown";
}

std::string_view to_string(ClassTag tag) {
    switch (tag) {
        case ClassTag::ClassA: return "classA";
        case ClassTag::UnitConstantTerm: return "unitConstantTerm";
        case ClassTag::General: return "general";
    }
    return "general";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kTagTolerance = 1e-14;

double factorial(int n) {
    double r = 1.0;
    for (int i = 2; i <= n; ++i) r *= i;
    return r;
}

// falling factorial k (k-1) ... (k-n+1)
double falling(int k, int n) {
    double r = 1.0;
    for (int i = 0; i < n; ++i) r *= (k - i);
    return r;
}

double family_radius(Family family, Complex c) {
    switch (family) {
        case Family::Koebe:
        case Family::KoebeOverZ: return 1.0;
        case Family::ZExpCz:
        case Family::ExpCz: return kInf;
        case Family::ZOverOneMinusCz:
        case Family::OneOverOneMinusCz: return std::abs(c) == 0.0 ? kInf : 1.0 / std::abs(c);
    }
    return kInf;
}

Complex family_derivative(Family family, Complex c, Complex z, int n) {
    switch (family) {
        case Family::Koebe: {
            const Complex q = 1.0 - z;
            if (n == 0) return z / (q * q);
            return factorial(n) * (double(n) + z) / std::pow(q, n + 2);
        }
        case Family::KoebeOverZ:
            return factorial(n + 1) / std::pow(1.0 - z, n + 2);
        case Family::ZExpCz: {
            const Complex e = std::exp(c * z);
            if (n == 0) return z * e;
            return e * (std::pow(c, n) * z + double(n) * std::pow(c, n - 1));
        }
        case Family::ExpCz:
            return (n == 0 ? Complex(1.0) : std::pow(c, n)) * std::exp(c * z);
        case Family::ZOverOneMinusCz: {
            const Complex q = 1.0 - c * z;
            if (n == 0) return z / q;
            return factorial(n) * (n == 1 ? Complex(1.0) : std::pow(c, n - 1)) / std::pow(q, n + 1);
        }
        case Family::OneOverOneMinusCz: {
            const Complex q = 1.0 - c * z;
            return factorial(n) * (n == 0 ? Complex(1.0) : std::pow(c, n)) / std::pow(q, n + 1);
        }
    }
    return {};
}

// Taylor coefficient a_n of the underived family.
Complex family_coefficient(Family family, Complex c, int n) {
    auto cpow = [&](int k) { return k == 0 ? Complex(1.0) : std::pow(c, k); };
    switch (family) {
        case Family::Koebe: return double(n);
        case Family::KoebeOverZ: return double(n + 1);
        case Family::ZExpCz: return n == 0 ? Complex(0.0) : cpow(n - 1) / factorial(n - 1);
        case Family::ExpCz: return cpow(n) / factorial(n);
        case Family::ZOverOneMinusCz: return n == 0 ? Complex(0.0) : cpow(n - 1);
        case Family::OneOverOneMinusCz: return cpow(n);
    }
    return {};
}

Family over_z_partner(Family family) {
    switch (family) {
        case Family::Koebe: return Family::KoebeOverZ;
        case Family::ZExpCz: return Family::ExpCz;
        case Family::ZOverOneMinusCz: return Family::OneOverOneMinusCz;
        default: break;
    }
    throw Error(ErrorKind::Validation, "closed form does not vanish at the origin");
}

// sum_{k >= n} c_k k!/(k-n)! z^{k-n} by Horner.
Complex series_derivative(const std::vector<Complex>& c, Complex z, int n) {
    Complex acc{0.0, 0.0};
    for (int k = static_cast<int>(c.size()) - 1; k >= n; --k) {
        acc = acc * z + c[k] * falling(k, n);
    }
    return acc;
}

void check_finite(std::span<const Complex> coeffs) {
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (!std::isfinite(coeffs[i].real()) || !std::isfinite(coeffs[i].imag())) {
            std::ostringstream msg;
            msg << "coefficient c" << i << " is not finite";
            throw Error(ErrorKind::Validation, msg.str());
        }
    }
}

void check_tag(std::span<const Complex> coeffs, ClassTag tag) {
    auto at = [&](std::size_t i) { return i < coeffs.size() ? coeffs[i] : Complex(0.0); };
    if (tag == ClassTag::ClassA) {
        if (std::abs(at(0)) > kTagTolerance)
            throw Error(ErrorKind::Validation, "classA invariant violated: c0 != 0");
        if (std::abs(at(1) - 1.0) > kTagTolerance)
            throw Error(ErrorKind::Validation, "classA invariant violated: c1 != 1");
    } else if (tag == ClassTag::UnitConstantTerm) {
        if (std::abs(at(0) - 1.0) > kTagTolerance)
            throw Error(ErrorKind::Validation, "unitConstantTerm invariant violated: c0 != 1");
    }
}

ClassTag detect_tag(std::span<const Complex> coeffs) {
    auto at = [&](std::size_t i) { return i < coeffs.size() ? coeffs[i] : Complex(0.0); };
    if (std::abs(at(0)) <= kTagTolerance && std::abs(at(1) - 1.0) <= kTagTolerance)
        return ClassTag::ClassA;
    if (std::abs(at(0) - 1.0) <= kTagTolerance) return ClassTag::UnitConstantTerm;
    return ClassTag::General;
}

std::string describe(std::string_view name, Complex c) {
    std::ostringstream out;
    out.precision(17);
    out << name << "(" << c.real();
    if (c.imag() != 0.0) out << "," << c.imag();
    out << ")";
    return out.str();
}

}  // namespace

AnalyticFunction::AnalyticFunction(Series series, double radius, ClassTag tag, std::string name)
    : repr_(std::move(series)), radius_(radius), tag_(tag), name_(std::move(name)) {
    const auto& c = std::get<Series>(repr_).coefficients;
    if (c.empty()) throw Error(ErrorKind::Validation, "coefficient list is empty");
    check_finite(c);
    check_tag(c, tag_);
    if (!(radius_ > 0.0)) throw Error(ErrorKind::Validation, "radius must be positive");
}

AnalyticFunction::AnalyticFunction(ClosedForm form, ClassTag tag, std::string name)
    : repr_(form), radius_(family_radius(form.family, form.c)), tag_(tag), name_(std::move(name)) {
    if (form.derivative_order < 0 || form.derivative_order > 2)
        throw Error(ErrorKind::Validation, "closed forms support at most two derivative shifts");
}

Complex AnalyticFunction::derivative(Complex z, int n) const {
    if (const auto* s = series()) return series_derivative(s->coefficients, z, n);
    const auto& cf = std::get<ClosedForm>(repr_);
    return family_derivative(cf.family, cf.c, z, n + cf.derivative_order);
}

Jet2 eval_jet(const AnalyticFunction& f, Complex z) {
    const double r = std::abs(z);
    if (!(r < f.radius())) {
        std::ostringstream msg;
        msg << "|z| = " << r << " outside the domain of " << f.name() << " (radius " << f.radius() << ")";
        throw Error(ErrorKind::Domain, msg.str(), z);
    }
    if (const auto* s = f.series(); s && s->truncated) {
        const auto& c = s->coefficients;
        const int n = static_cast<int>(c.size()) - 1;
        if (std::abs(c.back()) * std::pow(r, n) > AnalyticFunction::kEvalTailTolerance) {
            throw Error(ErrorKind::Representation,
                        "series tail bound violated for " + f.name(), z);
        }
    }
    if (const auto* s = f.series()) {
        // one Horner pass for value, first and second derivative
        const auto& c = s->coefficients;
        Complex p = c.back(), dp{0.0, 0.0}, ddp{0.0, 0.0};
        for (int k = static_cast<int>(c.size()) - 2; k >= 0; --k) {
            ddp = ddp * z + 2.0 * dp;
            dp = dp * z + p;
            p = p * z + c[k];
        }
        return {p, dp, ddp};
    }
    return {f.derivative(z, 0), f.derivative(z, 1), f.derivative(z, 2)};
}

Complex ratio_over_z(const AnalyticFunction& f, Complex z) {
    if (!(std::abs(z) < f.radius()))
        throw Error(ErrorKind::Domain, "|z| outside the domain of " + f.name(), z);
    Complex value;
    if (const auto* s = f.series()) {
        const auto& c = s->coefficients;
        if (std::abs(c[0]) > kTagTolerance)
            throw Error(ErrorKind::Validation, "f(0) != 0, f/z is not analytic for " + f.name());
        value = Complex(0.0);
        for (std::size_t k = c.size() - 1; k >= 1; --k) value = value * z + c[k];
    } else {
        const auto& cf = *f.closed_form();
        if (cf.derivative_order != 0)
            throw Error(ErrorKind::Validation, "f(0) != 0, f/z is not analytic for " + f.name());
        value = family_derivative(over_z_partner(cf.family), cf.c, z, 0);
    }
    if (std::abs(value) < 1e-14) {
        throw Error(ErrorKind::Singularity, "f(z)/z vanishes off the origin for " + f.name(), z);
    }
    return value;
}

AnalyticFunction over_z(const AnalyticFunction& f) {
    const ClassTag tag = f.class_tag() == ClassTag::ClassA ? ClassTag::UnitConstantTerm : ClassTag::General;
    if (const auto* s = f.series()) {
        const auto& c = s->coefficients;
        if (std::abs(c[0]) > kTagTolerance)
            throw Error(ErrorKind::Validation, "f(0) != 0, f/z is not analytic for " + f.name());
        std::vector<Complex> shifted(c.begin() + (c.size() > 1 ? 1 : 0), c.end());
        if (c.size() == 1) shifted.assign(1, Complex(0.0));
        Series out{std::move(shifted), s->truncated};
        return AnalyticFunction(std::move(out), f.radius(), tag, f.name() + "/z");
    }
    const auto& cf = *f.closed_form();
    if (cf.derivative_order != 0)
        throw Error(ErrorKind::Validation, "f(0) != 0, f/z is not analytic for " + f.name());
    return AnalyticFunction(ClosedForm{over_z_partner(cf.family), cf.c, 0}, tag, f.name() + "/z");
}

AnalyticFunction derivative_of(const AnalyticFunction& f) {
    const ClassTag tag = f.class_tag() == ClassTag::ClassA ? ClassTag::UnitConstantTerm : ClassTag::General;
    if (const auto* s = f.series()) {
        const auto& c = s->coefficients;
        std::vector<Complex> d;
        for (std::size_t k = 1; k < c.size(); ++k) d.push_back(c[k] * double(k));
        if (d.empty()) d.push_back(Complex(0.0));
        return AnalyticFunction(Series{std::move(d), s->truncated}, f.radius(), tag, f.name() + "'");
    }
    ClosedForm cf = *f.closed_form();
    ++cf.derivative_order;
    return AnalyticFunction(cf, tag, f.name() + "'");
}

std::vector<Complex> coefficients(const AnalyticFunction& f) {
    if (const auto* s = f.series()) return s->coefficients;
    const auto& cf = *f.closed_form();
    const int shift = cf.derivative_order;
    std::vector<Complex> out;
    double scale = 1.0;
    for (int n = 0; n <= AnalyticFunction::kMaxTerms; ++n) {
        const Complex b = family_coefficient(cf.family, cf.c, n + shift) * falling(n + shift, shift);
        out.push_back(b);
        scale *= (n == 0 ? 1.0 : AnalyticFunction::kTailRadius);
        if (n >= 2 && std::abs(b) * scale < AnalyticFunction::kTailTolerance) break;
    }
    return out;
}

AnalyticFunction from_coefficients(std::span<const Complex> coeffs, ClassTag tag, bool truncated,
                                   double radius) {
    if (coeffs.empty()) throw Error(ErrorKind::Validation, "coefficient list is empty");
    check_finite(coeffs);
    check_tag(coeffs, tag);
    double r = kInf;
    if (truncated) {
        const int n = static_cast<int>(coeffs.size()) - 1;
        const bool tail_ok = std::abs(coeffs.back()) * std::pow(AnalyticFunction::kTailRadius, n) <
                             AnalyticFunction::kTailTolerance;
        r = radius > 0.0 ? radius : (tail_ok ? AnalyticFunction::kTailRadius : 1.0);
    }
    std::ostringstream name;
    name.precision(17);
    name << "poly[";
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        if (i) name << ";";
        name << coeffs[i].real();
        if (coeffs[i].imag() != 0.0) name << "," << coeffs[i].imag();
    }
    name << "]";
    return AnalyticFunction(Series{{coeffs.begin(), coeffs.end()}, truncated}, r, tag, name.str());
}

AnalyticFunction preset(std::string_view name, std::span<const Complex> params) {
    auto param = [&](Complex fallback) { return params.empty() ? fallback : params[0]; };
    if (name == "identity") {
        const Complex c[] = {0.0, 1.0};
        return AnalyticFunction(Series{{c[0], c[1]}, false}, kInf, ClassTag::ClassA, "identity");
    }
    if (name == "koebe") return AnalyticFunction(ClosedForm{Family::Koebe}, ClassTag::ClassA, "koebe");
    if (name == "constant_one")
        return AnalyticFunction(Series{{Complex(1.0)}, false}, kInf, ClassTag::UnitConstantTerm, "constant_one");
    if (name == "polynomial") {
        if (params.empty()) throw Error(ErrorKind::Validation, "polynomial preset needs coefficients");
        return from_coefficients(params, detect_tag(params));
    }
    if (name == "z_exp_cz") {
        const Complex c = param(0.5);
        return AnalyticFunction(ClosedForm{Family::ZExpCz, c}, ClassTag::ClassA, describe("z_exp_cz", c));
    }
    if (name == "z_over_one_minus_cz") {
        const Complex c = param(1.0);
        // |c| = 1 keeps the pole on the unit circle; anything larger puts it inside
        if (std::abs(c) > 1.0)
            throw Error(ErrorKind::Validation, "z_over_one_minus_cz requires |c| <= 1 (pole inside the disk)");
        return AnalyticFunction(ClosedForm{Family::ZOverOneMinusCz, c}, ClassTag::ClassA,
                                describe("z_over_one_minus_cz", c));
    }
    throw Error(ErrorKind::UnknownName, "unknown function preset '" + std::string(name) + "'");
}

}  // namespace univalence

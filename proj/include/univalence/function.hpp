#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "univalence/errors.hpp"

namespace univalence {

/// Value and exact first/second derivative at a point.
struct Jet2 {
    Complex value;
    Complex d1;
    Complex d2;
};

enum class ClassTag { ClassA, UnitConstantTerm, General };

std::string_view to_string(ClassTag tag);

/// Closed-form families kept analytic. Each family has an `over z` partner so
/// that f(z)/z and its derivatives never go through a removable singularity.
enum class Family {
    Koebe,             // z/(1-z)^2
    KoebeOverZ,        // 1/(1-z)^2
    ZExpCz,            // z e^{cz}
    ExpCz,             // e^{cz}
    ZOverOneMinusCz,   // z/(1-cz)
    OneOverOneMinusCz, // 1/(1-cz)
};

struct ClosedForm {
    Family family;
    Complex c{0.0, 0.0};
    int derivative_order = 0;  // number of d/dz applied to the family
};

struct Series {
    std::vector<Complex> coefficients;  // c_0, c_1, ..., c_N
    bool truncated = false;             // true when cut from an infinite expansion
};

/// Analytic function on a disk |z| < radius with radius > 1 for every
/// function built by the toolkit except the boundary-singular catalog entries
/// (koebe, z/(1-cz) with |c| = 1), which carry radius exactly 1.
class AnalyticFunction {
public:
    static constexpr double kTailTolerance = 1e-15;
    static constexpr double kTailRadius = 1.05;
    static constexpr int kMaxTerms = 256;
    static constexpr double kEvalTailTolerance = 1e-12;

    AnalyticFunction(Series series, double radius, ClassTag tag, std::string name);
    AnalyticFunction(ClosedForm form, ClassTag tag, std::string name);

    bool is_series() const { return std::holds_alternative<Series>(repr_); }
    const Series* series() const { return std::get_if<Series>(&repr_); }
    const ClosedForm* closed_form() const { return std::get_if<ClosedForm>(&repr_); }

    double radius() const { return radius_; }
    ClassTag class_tag() const { return tag_; }
    const std::string& name() const { return name_; }

    /// n-th derivative at z for n in [0, 4]; no domain check.
    Complex derivative(Complex z, int n) const;

private:
    std::variant<Series, ClosedForm> repr_;
    double radius_;
    ClassTag tag_;
    std::string name_;
};

Jet2 eval_jet(const AnalyticFunction& f, Complex z);

/// f(z)/z with the removable singularity at the origin handled through the
/// shifted representation. Requires f(0) = 0.
Complex ratio_over_z(const AnalyticFunction& f, Complex z);

/// g(z) = f(z)/z as a function in its own right (unitConstantTerm for class A).
AnalyticFunction over_z(const AnalyticFunction& f);

/// g = f'. Tagged unitConstantTerm when f is class A.
AnalyticFunction derivative_of(const AnalyticFunction& f);

/// Taylor coefficients: exact for series, generated with the truncation rule
/// |c_N| 1.05^N < 1e-15 or N = 256 for closed forms.
std::vector<Complex> coefficients(const AnalyticFunction& f);

/// The coefficient list is an exact polynomial; radius is +inf unless the
/// list is marked truncated, in which case `radius` is used.
AnalyticFunction from_coefficients(std::span<const Complex> coeffs, ClassTag tag,
                                   bool truncated = false, double radius = 0.0);

/// Catalog: identity, koebe, polynomial, z_exp_cz, z_over_one_minus_cz,
/// constant_one. `params` holds the catalog parameter(s).
AnalyticFunction preset(std::string_view name, std::span<const Complex> params = {});

}  // namespace univalence

#pragma once

#include <array>
#include <optional>

#include "mag/pfaff.hpp"
#include "mag/sample.hpp"

namespace mag {

// Coefficients of A(z_xx z_yy - z_xy^2) + B z_xx + 2C z_xy + D z_yy + E = 0,
// read as functions on the 5-chart.
struct MACoefficients {
    ScalarExpr A, B, C, D, E;

    bool operator==(const MACoefficients& o) const = default;
};

// The contact ideal {theta, d(theta), Omega} of a Monge-Ampere system on a
// 5-dimensional chart. Construction validates the contact condition and the
// independence of Omega and d(theta) modulo theta.
class MongeAmpereSystem {
public:
    static MongeAmpereSystem from_equation(const MACoefficients& c, Notes* notes = nullptr,
                                           Sampler* sampler = nullptr);
    static MongeAmpereSystem from_forms(DiffForm theta, DiffForm omega, Notes* notes = nullptr,
                                        Sampler* sampler = nullptr);

    const Chart& chart() const { return theta_.chart(); }
    const DiffForm& theta() const { return theta_; }
    const DiffForm& dtheta() const { return dtheta_; }
    const DiffForm& omega() const { return omega_; }
    const std::optional<MACoefficients>& source() const { return source_; }

private:
    DiffForm theta_, dtheta_, omega_;
    std::optional<MACoefficients> source_;

    MongeAmpereSystem() = default;
    static MongeAmpereSystem validated(DiffForm theta, DiffForm omega,
                                       std::optional<MACoefficients> source, Notes* notes,
                                       Sampler* sampler);
};

enum class EquationKind { Parabolic, Hyperbolic, Elliptic, Indefinite, Degenerate };

std::string to_string(EquationKind k);

struct Classification {
    ScalarExpr c2, c1, c0;       // (Omega + lambda d theta)^2 = (c2 l^2 + c1 l + c0) vol mod theta
    ScalarExpr discriminant;     // c1^2 - 4 c2 c0
    EquationKind kind = EquationKind::Indefinite;
    std::vector<ScalarExpr> roots; // lambda values when extractable in the field
};

// J = {theta, omega1, omega2} for a decomposable representative
// Omega + lambda d(theta). The omega fields hold the exact factorization;
// the Pfaffian system carries cleared generators with the same span.
struct CharacteristicSystem {
    ScalarExpr lambda;
    DiffForm omega1, omega2;
    PfaffianSystem J;
};

struct HypothesisReport {
    bool integrable = false;
    bool assumption1 = false; // d(theta) = 0 mod J
    bool assumption2 = false; // theta ^ d(theta) ^ (omega1 ^ omega2) never vanishes
    std::string verdict;
};

// Coefficients (c2, c1, c0) of the lambda-quadratic, from the three wedge
// squares reduced mod theta on the 4-form line.
std::array<ScalarExpr, 3> characteristic_quadratic(const MongeAmpereSystem& s);

Classification classify(const MongeAmpereSystem& s, Notes* notes = nullptr);

// One system per extractable root: parabolic gives one, hyperbolic two.
// Elliptic and indefinite classifications raise UnsupportedError.
std::vector<CharacteristicSystem> characteristic_systems(const MongeAmpereSystem& s,
                                                         Notes* notes = nullptr);

HypothesisReport check_theorem_hypotheses(const MongeAmpereSystem& s, const CharacteristicSystem& cs,
                                          Notes* notes = nullptr, Sampler* sampler = nullptr);

} // namespace mag

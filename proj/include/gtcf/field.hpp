#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace gtcf::algebra {

using Rat = mpq_class;

Rat rat_from_string(const std::string& s);

// Element of the active base field, stored as coordinates in the power basis
// 1, zeta, ..., zeta^(phi(n)-1). Over the rationals the vector has length 1.
// All arithmetic goes through BaseField so elements stay plain data.
struct FieldElem {
    std::vector<Rat> c;

    bool operator==(const FieldElem& o) const { return c == o.c; }
    bool operator!=(const FieldElem& o) const { return !(*this == o); }
    bool operator<(const FieldElem& o) const;
};

// zeta -> zeta^k with gcd(k, n) = 1; identity on the rationals (k = 1, n = 1).
struct FieldAut {
    unsigned k = 1;

    bool operator==(const FieldAut& o) const { return k == o.k; }
    bool operator!=(const FieldAut& o) const { return k != o.k; }
};

// Exact base field: either Q or the cyclotomic field Q(zeta_n), with elements
// reduced modulo the n-th cyclotomic polynomial.
class BaseField {
public:
    static BaseField rational();
    static BaseField cyclotomic(unsigned n);

    bool is_rational() const { return rational_; }
    unsigned n() const { return n_; }
    // Degree over Q, i.e. phi(n) for cyclotomic fields and 1 for Q.
    unsigned degree() const { return static_cast<unsigned>(min_poly_.size() - 1); }
    // Monic minimal polynomial of zeta (coefficients low to high).
    const std::vector<Rat>& min_poly() const { return min_poly_; }

    bool operator==(const BaseField& o) const { return rational_ == o.rational_ && n_ == o.n_; }
    bool operator!=(const BaseField& o) const { return !(*this == o); }

    FieldElem zero() const;
    FieldElem one() const;
    FieldElem from_rat(const Rat& r) const;
    FieldElem zeta() const;
    FieldElem zeta_pow(long e) const;

    bool is_zero(const FieldElem& a) const;
    bool is_one(const FieldElem& a) const;
    FieldElem add(const FieldElem& a, const FieldElem& b) const;
    FieldElem sub(const FieldElem& a, const FieldElem& b) const;
    FieldElem neg(const FieldElem& a) const;
    FieldElem mul(const FieldElem& a, const FieldElem& b) const;
    FieldElem inv(const FieldElem& a) const;
    FieldElem div(const FieldElem& a, const FieldElem& b) const;

    // Validates gcd(k, n) = 1 (throws ValidationError otherwise).
    FieldAut aut(long k) const;
    FieldAut compose(const FieldAut& f, const FieldAut& g) const;
    FieldAut aut_inverse(const FieldAut& f) const;
    FieldElem apply_aut(const FieldAut& f, const FieldElem& a) const;

    // Canonical rendering, e.g. "1", "-2/3", "zeta^2 - zeta + 1/2".
    std::string to_string(const FieldElem& a) const;
    // True when the rendering needs parentheses as a coefficient factor.
    bool is_composite(const FieldElem& a) const;

private:
    BaseField() = default;

    bool rational_ = true;
    unsigned n_ = 1;
    std::vector<Rat> min_poly_;          // Phi_n, or x - 1 for Q
    std::vector<std::vector<Rat>> zeta_powers_; // zeta^0 .. zeta^(n-1) reduced
};

} // namespace gtcf::algebra

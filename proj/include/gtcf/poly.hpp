#pragma once

#include "gtcf/field.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace gtcf::algebra {

// Exponent vector; the length always equals the width of the owning ring.
using Mono = std::vector<uint32_t>;

unsigned mono_degree(const Mono& m);
Mono mono_mul(const Mono& a, const Mono& b);
bool mono_divides(const Mono& a, const Mono& b); // a | b
Mono mono_div(const Mono& b, const Mono& a);     // b / a, requires a | b
Mono mono_lcm(const Mono& a, const Mono& b);

// Lex-descending comparison in ambient variable order; the canonical storage
// order of terms, independent of the order a Groebner run uses.
struct MonoLexGreater {
    bool operator()(const Mono& a, const Mono& b) const;
};

class PolyRing;
using RingPtr = std::shared_ptr<const PolyRing>;

// Immutable polynomial ring context: base field plus named variables.
class PolyRing {
public:
    static RingPtr make(BaseField field, std::vector<std::string> vars);

    const BaseField& field() const { return field_; }
    size_t nvars() const { return vars_.size(); }
    const std::vector<std::string>& vars() const { return vars_; }
    // Index of a variable name, -1 when absent.
    int var_index(const std::string& name) const;

    // Structural equality (same field, same variable names in order).
    bool same_as(const PolyRing& o) const;

private:
    PolyRing(BaseField field, std::vector<std::string> vars);

    BaseField field_;
    std::vector<std::string> vars_;
    std::map<std::string, size_t> index_;
};

class Poly {
public:
    using Terms = std::map<Mono, FieldElem, MonoLexGreater>;

    Poly() = default;
    static Poly zero(const RingPtr& ring);
    static Poly constant(const RingPtr& ring, const FieldElem& c);
    static Poly constant(const RingPtr& ring, const Rat& c);
    static Poly variable(const RingPtr& ring, size_t index);

    const RingPtr& ring() const { return ring_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    unsigned degree() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    bool operator==(const Poly& o) const;
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly scaled(const FieldElem& c) const;
    Poly pow(unsigned e) const;

    // True when every variable with a nonzero exponent satisfies keep[i].
    bool supported_on(const std::vector<bool>& keep) const;

    void add_term(const Mono& m, const FieldElem& c);

    std::string to_string() const;

private:
    explicit Poly(RingPtr ring) : ring_(std::move(ring)) {}

    RingPtr ring_;
    Terms terms_;
};

// Ring homomorphism: coefficients through aut, variable i to images[i].
// Source and target must share the same base field.
Poly apply_hom(const Poly& p, const RingPtr& target, const std::vector<Poly>& images,
               const FieldAut& aut);

// Coefficient-wise automorphism within the same ring.
Poly apply_field_aut(const Poly& p, const FieldAut& aut);

} // namespace gtcf::algebra

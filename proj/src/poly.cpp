#include "gtcf/poly.hpp"

#include "gtcf/errors.hpp"

#include <algorithm>
#include <sstream>

namespace gtcf::algebra {

unsigned mono_degree(const Mono& m) {
    unsigned d = 0;
    for (auto e : m) d += e;
    return d;
}

Mono mono_mul(const Mono& a, const Mono& b) {
    Mono r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
    return r;
}

bool mono_divides(const Mono& a, const Mono& b) {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] > b[i]) return false;
    return true;
}

Mono mono_div(const Mono& b, const Mono& a) {
    Mono r = b;
    for (size_t i = 0; i < r.size(); ++i) r[i] -= a[i];
    return r;
}

Mono mono_lcm(const Mono& a, const Mono& b) {
    Mono r = a;
    for (size_t i = 0; i < r.size(); ++i) r[i] = std::max(r[i], b[i]);
    return r;
}

bool MonoLexGreater::operator()(const Mono& a, const Mono& b) const {
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

RingPtr PolyRing::make(BaseField field, std::vector<std::string> vars) {
    return RingPtr(new PolyRing(std::move(field), std::move(vars)));
}

PolyRing::PolyRing(BaseField field, std::vector<std::string> vars)
    : field_(std::move(field)), vars_(std::move(vars)) {
    for (size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i].empty()) throw ValidationError("empty variable name");
        if (vars_[i] == "zeta")
            throw ValidationError("'zeta' is reserved and cannot name a variable");
        if (!index_.emplace(vars_[i], i).second)
            throw ValidationError("duplicate variable name '" + vars_[i] + "'");
    }
}

int PolyRing::var_index(const std::string& name) const {
    auto it = index_.find(name);
    return it == index_.end() ? -1 : static_cast<int>(it->second);
}

bool PolyRing::same_as(const PolyRing& o) const {
    return field_ == o.field_ && vars_ == o.vars_;
}

namespace {

void require_same_ring(const Poly& a, const Poly& b) {
    if (a.ring() == b.ring()) return;
    if (a.ring() && b.ring() && a.ring()->same_as(*b.ring())) return;
    throw ValidationError("polynomial operands live in different rings");
}

} // namespace

Poly Poly::zero(const RingPtr& ring) { return Poly(ring); }

Poly Poly::constant(const RingPtr& ring, const FieldElem& c) {
    Poly p(ring);
    p.add_term(Mono(ring->nvars(), 0), c);
    return p;
}

Poly Poly::constant(const RingPtr& ring, const Rat& c) {
    return constant(ring, ring->field().from_rat(c));
}

Poly Poly::variable(const RingPtr& ring, size_t index) {
    if (index >= ring->nvars()) throw ValidationError("variable index out of range");
    Mono m(ring->nvars(), 0);
    m[index] = 1;
    Poly p(ring);
    p.add_term(m, ring->field().one());
    return p;
}

unsigned Poly::degree() const {
    unsigned d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, mono_degree(m));
    return d;
}

void Poly::add_term(const Mono& m, const FieldElem& c) {
    const auto& f = ring_->field();
    if (f.is_zero(c)) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second = f.add(it->second, c);
        if (f.is_zero(it->second)) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r(ring_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, ring_->field().neg(c));
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    require_same_ring(*this, o);
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const {
    require_same_ring(*this, o);
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, o.ring_->field().neg(c));
    return r;
}

Poly Poly::operator*(const Poly& o) const {
    require_same_ring(*this, o);
    Poly r(ring_);
    const auto& f = ring_->field();
    for (const auto& [ma, ca] : terms_)
        for (const auto& [mb, cb] : o.terms_) r.add_term(mono_mul(ma, mb), f.mul(ca, cb));
    return r;
}

bool Poly::operator==(const Poly& o) const {
    if (!ring_ || !o.ring_) return !ring_ && !o.ring_;
    if (ring_ != o.ring_ && !ring_->same_as(*o.ring_)) return false;
    return terms_ == o.terms_;
}

Poly Poly::scaled(const FieldElem& c) const {
    Poly r(ring_);
    const auto& f = ring_->field();
    if (f.is_zero(c)) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, f.mul(k, c));
    return r;
}

Poly Poly::pow(unsigned e) const {
    Poly r = Poly::constant(ring_, ring_->field().one());
    for (unsigned i = 0; i < e; ++i) r = r * *this;
    return r;
}

bool Poly::supported_on(const std::vector<bool>& keep) const {
    for (const auto& [m, c] : terms_)
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0 && !keep[i]) return false;
    return true;
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    const auto& f = ring_->field();
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        std::string mono;
        for (size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!mono.empty()) mono += "*";
            mono += ring_->vars()[i];
            if (m[i] > 1) mono += "^" + std::to_string(m[i]);
        }
        std::string coeff;
        bool negative = false;
        if (f.is_composite(c)) {
            coeff = "(" + f.to_string(c) + ")";
        } else {
            // Single power-basis coordinate: pull the sign out front.
            FieldElem abs = c;
            size_t j = 0;
            for (size_t i = 0; i < c.c.size(); ++i)
                if (c.c[i] != 0) j = i;
            if (c.c[j] < 0) {
                negative = true;
                abs = f.neg(c);
            }
            Rat mag = abs.c[j];
            std::string base;
            if (j > 0) {
                base = "zeta";
                if (j > 1) base += "^" + std::to_string(j);
            }
            if (mag != 1 || (base.empty() && mono.empty())) coeff = mag.get_str();
            if (!base.empty()) {
                if (!coeff.empty()) coeff += "*";
                coeff += base;
            }
        }
        if (first) {
            if (negative) out << "-";
            first = false;
        } else {
            out << (negative ? " - " : " + ");
        }
        if (!coeff.empty() && !mono.empty())
            out << coeff << "*" << mono;
        else
            out << coeff << mono;
    }
    return out.str();
}

Poly apply_hom(const Poly& p, const RingPtr& target, const std::vector<Poly>& images,
               const FieldAut& aut) {
    if (images.size() != p.ring()->nvars())
        throw ValidationError("homomorphism image count does not match source ring");
    if (p.ring()->field() != target->field())
        throw ValidationError("homomorphism endpoints have different base fields");
    const auto& f = target->field();
    Poly r = Poly::zero(target);
    for (const auto& [m, c] : p.terms()) {
        Poly term = Poly::constant(target, f.apply_aut(aut, c));
        for (size_t i = 0; i < m.size(); ++i)
            if (m[i] > 0) term = term * images[i].pow(m[i]);
        r = r + term;
    }
    return r;
}

Poly apply_field_aut(const Poly& p, const FieldAut& aut) {
    const auto& f = p.ring()->field();
    Poly r = Poly::zero(p.ring());
    for (const auto& [m, c] : p.terms()) r.add_term(m, f.apply_aut(aut, c));
    return r;
}

} // namespace gtcf::algebra

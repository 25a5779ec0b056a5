#include "gtcf/field.hpp"

#include "gtcf/errors.hpp"

#include <numeric>
#include <sstream>

namespace gtcf::algebra {

namespace {

// Dense univariate polynomials over Q, coefficients low to high, no trailing
// zeros. Only what the cyclotomic construction and inversion need.
using UPoly = std::vector<Rat>;

void trim(UPoly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

UPoly umul(const UPoly& a, const UPoly& b) {
    if (a.empty() || b.empty()) return {};
    UPoly r(a.size() + b.size() - 1, Rat(0));
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    trim(r);
    return r;
}

UPoly usub(UPoly a, const UPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rat(0));
    for (size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

UPoly uscale(UPoly a, const Rat& c) {
    for (auto& x : a) x *= c;
    trim(a);
    return a;
}

// Quotient and remainder of a by b (b nonzero).
std::pair<UPoly, UPoly> udivmod(UPoly a, const UPoly& b) {
    UPoly q;
    if (a.size() >= b.size()) q.resize(a.size() - b.size() + 1, Rat(0));
    while (a.size() >= b.size() && !a.empty()) {
        Rat c = a.back() / b.back();
        size_t shift = a.size() - b.size();
        q[shift] = c;
        for (size_t i = 0; i < b.size(); ++i) a[shift + i] -= c * b[i];
        trim(a);
    }
    trim(q);
    return {q, a};
}

// Inverse of a modulo m in Q[x] via the extended Euclidean algorithm.
// Requires gcd(a, m) = 1, which holds for nonzero elements of Q[x]/Phi_n.
UPoly uinvmod(UPoly a, const UPoly& m) {
    UPoly r0 = m, r1 = std::move(a);
    UPoly t0 = {}, t1 = {Rat(1)};
    while (!r1.empty()) {
        auto [q, r] = udivmod(r0, r1);
        UPoly t = usub(t0, umul(q, t1));
        r0 = std::move(r1);
        r1 = std::move(r);
        t0 = std::move(t1);
        t1 = std::move(t);
    }
    if (r0.size() != 1)
        throw ValidationError("element is not invertible in the cyclotomic field");
    return uscale(t0, Rat(1) / r0[0]);
}

// Phi_n by the recursive quotient formula: x^n - 1 divided by the product of
// Phi_d over proper divisors d of n.
UPoly cyclotomic_poly(unsigned n) {
    std::vector<UPoly> phi(n + 1);
    for (unsigned m = 1; m <= n; ++m) {
        UPoly num(m + 1, Rat(0));
        num[0] = -1;
        num[m] = 1;
        for (unsigned d = 1; d < m; ++d) {
            if (m % d != 0) continue;
            auto [q, r] = udivmod(num, phi[d]);
            num = std::move(q);
        }
        phi[m] = std::move(num);
    }
    return phi[n];
}

long mod_inverse(long k, long n) {
    long t = 0, new_t = 1, r = n, new_r = k % n;
    while (new_r != 0) {
        long q = r / new_r;
        long tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw ValidationError("automorphism exponent is not a unit modulo n");
    return ((t % n) + n) % n;
}

} // namespace

Rat rat_from_string(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw ValidationError("malformed rational literal '" + s + "'");
    r.canonicalize();
    return r;
}

bool FieldElem::operator<(const FieldElem& o) const {
    if (c.size() != o.c.size()) return c.size() < o.c.size();
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != o.c[i]) return c[i] < o.c[i];
    return false;
}

BaseField BaseField::rational() {
    BaseField f;
    f.rational_ = true;
    f.n_ = 1;
    f.min_poly_ = {Rat(-1), Rat(1)};
    f.zeta_powers_ = {{Rat(1)}};
    return f;
}

BaseField BaseField::cyclotomic(unsigned n) {
    if (n == 0) throw ValidationError("cyclotomic index must be positive");
    BaseField f;
    f.rational_ = false;
    f.n_ = n;
    f.min_poly_ = cyclotomic_poly(n);
    unsigned d = f.degree();
    // Reduce zeta^0 .. zeta^(n-1) once; automorphisms index into this table.
    UPoly cur = {Rat(1)};
    for (unsigned e = 0; e < n; ++e) {
        UPoly red = cur;
        if (red.size() > d) red = udivmod(red, f.min_poly_).second;
        red.resize(d, Rat(0));
        f.zeta_powers_.push_back(red);
        cur.insert(cur.begin(), Rat(0));
    }
    return f;
}

FieldElem BaseField::zero() const { return FieldElem{std::vector<Rat>(degree(), Rat(0))}; }

FieldElem BaseField::one() const { return from_rat(Rat(1)); }

FieldElem BaseField::from_rat(const Rat& r) const {
    FieldElem e = zero();
    e.c[0] = r;
    return e;
}

FieldElem BaseField::zeta() const { return zeta_pow(1); }

FieldElem BaseField::zeta_pow(long e) const {
    if (is_rational()) throw ValidationError("zeta is only available over a cyclotomic field");
    long m = e % static_cast<long>(n_);
    if (m < 0) m += n_;
    return FieldElem{zeta_powers_[static_cast<size_t>(m)]};
}

bool BaseField::is_zero(const FieldElem& a) const {
    for (const auto& x : a.c)
        if (x != 0) return false;
    return true;
}

bool BaseField::is_one(const FieldElem& a) const { return a == one(); }

FieldElem BaseField::add(const FieldElem& a, const FieldElem& b) const {
    FieldElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
    return r;
}

FieldElem BaseField::sub(const FieldElem& a, const FieldElem& b) const {
    FieldElem r = a;
    for (size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
    return r;
}

FieldElem BaseField::neg(const FieldElem& a) const {
    FieldElem r = a;
    for (auto& x : r.c) x = -x;
    return r;
}

FieldElem BaseField::mul(const FieldElem& a, const FieldElem& b) const {
    if (is_rational()) return FieldElem{{a.c[0] * b.c[0]}};
    UPoly pa(a.c), pb(b.c);
    trim(pa);
    trim(pb);
    UPoly prod = umul(pa, pb);
    if (prod.size() > degree()) prod = udivmod(prod, min_poly_).second;
    prod.resize(degree(), Rat(0));
    return FieldElem{std::move(prod)};
}

FieldElem BaseField::inv(const FieldElem& a) const {
    if (is_zero(a)) throw ValidationError("division by zero in the base field");
    if (is_rational()) return FieldElem{{Rat(1) / a.c[0]}};
    UPoly pa(a.c);
    trim(pa);
    UPoly r = uinvmod(pa, min_poly_);
    r.resize(degree(), Rat(0));
    return FieldElem{std::move(r)};
}

FieldElem BaseField::div(const FieldElem& a, const FieldElem& b) const { return mul(a, inv(b)); }

FieldAut BaseField::aut(long k) const {
    long n = static_cast<long>(n_);
    long m = ((k % n) + n) % n;
    if (std::gcd(m, n) != 1)
        throw ValidationError("automorphism zeta -> zeta^" + std::to_string(k) +
                              " is invalid for n = " + std::to_string(n_));
    return FieldAut{static_cast<unsigned>(m)};
}

FieldAut BaseField::compose(const FieldAut& f, const FieldAut& g) const {
    return FieldAut{static_cast<unsigned>((static_cast<unsigned long>(f.k) * g.k) % n_)};
}

FieldAut BaseField::aut_inverse(const FieldAut& f) const {
    return FieldAut{static_cast<unsigned>(mod_inverse(f.k, n_))};
}

FieldElem BaseField::apply_aut(const FieldAut& f, const FieldElem& a) const {
    if (is_rational()) return a;
    FieldElem r = zero();
    for (size_t j = 0; j < a.c.size(); ++j) {
        if (a.c[j] == 0) continue;
        const auto& zp = zeta_powers_[(j * f.k) % n_];
        for (size_t i = 0; i < r.c.size(); ++i) r.c[i] += a.c[j] * zp[i];
    }
    return r;
}

std::string BaseField::to_string(const FieldElem& a) const {
    if (is_zero(a)) return "0";
    std::ostringstream out;
    bool first = true;
    for (size_t j = a.c.size(); j-- > 0;) {
        const Rat& c = a.c[j];
        if (c == 0) continue;
        Rat abs = c < 0 ? Rat(-c) : c;
        if (first) {
            if (c < 0) out << "-";
            first = false;
        } else {
            out << (c < 0 ? " - " : " + ");
        }
        bool unit_coeff = (abs == 1) && j > 0;
        if (!unit_coeff) out << abs.get_str();
        if (j > 0) {
            if (!unit_coeff) out << "*";
            out << "zeta";
            if (j > 1) out << "^" << j;
        }
    }
    return out.str();
}

bool BaseField::is_composite(const FieldElem& a) const {
    int nonzero = 0;
    for (const auto& x : a.c)
        if (x != 0) ++nonzero;
    if (nonzero > 1) return true;
    // A single negative or non-unit term still renders fine inline, but a
    // zeta term with a rational factor does not ("2*zeta" as coefficient).
    for (size_t j = 1; j < a.c.size(); ++j)
        if (a.c[j] != 0) return true;
    return false;
}

} // namespace gtcf::algebra

#include "lamq/field.hpp"

#include <stdexcept>

namespace lamq {

namespace {

bool is_prime(long long n) {
    if (n < 2) return false;
    for (long long d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

long long mod_reduce(long long v, long long p) {
    long long r = v % p;
    return r < 0 ? r + p : r;
}

long long mod_mul(long long a, long long b, long long p) {
    return (long long)((__int128)a * b % p);
}

long long mod_pow(long long a, long long e, long long p) {
    long long r = 1 % p, base = mod_reduce(a, p);
    while (e > 0) {
        if (e & 1) r = mod_mul(r, base, p);
        base = mod_mul(base, base, p);
        e >>= 1;
    }
    return r;
}

long long mod_inv(long long a, long long p) {
    a = mod_reduce(a, p);
    if (a == 0) throw std::domain_error("division by zero in F_p");
    return mod_pow(a, p - 2, p);
}

mpz_class parse_mpz(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("empty integer literal");
    return mpz_class(s, 10);
}

}  // namespace

Field Field::make(const std::string& spec, const std::string& q_literal) {
    Field f;
    if (spec == "Q") {
        f.kind_ = Kind::rationals;
        f.p_ = 0;
    } else if (spec.rfind("Fp:", 0) == 0) {
        mpz_class p = parse_mpz(spec.substr(3));
        if (!p.fits_slong_p())
            throw std::invalid_argument("modulus out of range: " + spec);
        long long pv = p.get_si();
        if (!is_prime(pv))
            throw std::invalid_argument("modulus is not prime: " + spec.substr(3));
        f.kind_ = Kind::prime;
        f.p_ = pv;
    } else {
        throw std::invalid_argument("field descriptor must be \"Q\" or \"Fp:<p>\": " + spec);
    }
    f.q_ = f.parse(q_literal);
    if (f.is_zero(f.q_)) throw std::invalid_argument("q must be non-zero");
    return f;
}

Scalar Field::zero() const { return from_long(0); }
Scalar Field::one() const { return from_long(1); }

Scalar Field::from_long(long long n) const {
    if (kind_ == Kind::rationals) return Scalar(mpq_class((long)n));
    return Scalar(mod_reduce(n, p_));
}

Scalar Field::parse(const std::string& literal) const {
    auto slash = literal.find('/');
    mpz_class num, den(1);
    if (slash == std::string::npos) {
        num = parse_mpz(literal);
    } else {
        num = parse_mpz(literal.substr(0, slash));
        den = parse_mpz(literal.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator: " + literal);
    }
    if (kind_ == Kind::rationals) {
        mpq_class v(num, den);
        v.canonicalize();
        return Scalar(v);
    }
    long pl = (long)p_;
    long long n = mod_reduce(mpz_class(num % pl).get_si(), p_);
    long long d = mod_reduce(mpz_class(den % pl).get_si(), p_);
    return Scalar(mod_mul(n, mod_inv(d, p_), p_));
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::rationals) return Scalar(mpq_class(a.rat() + b.rat()));
    return Scalar(mod_reduce(a.res() + b.res(), p_));
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::rationals) return Scalar(mpq_class(a.rat() - b.rat()));
    return Scalar(mod_reduce(a.res() - b.res(), p_));
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::rationals) return Scalar(mpq_class(a.rat() * b.rat()));
    return Scalar(mod_mul(a.res(), b.res(), p_));
}

Scalar Field::neg(const Scalar& a) const {
    if (kind_ == Kind::rationals) return Scalar(mpq_class(-a.rat()));
    return Scalar(mod_reduce(-a.res(), p_));
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a)) throw std::domain_error("inverse of zero");
    if (kind_ == Kind::rationals) return Scalar(mpq_class(1 / a.rat()));
    return Scalar(mod_inv(a.res(), p_));
}

Scalar Field::div(const Scalar& a, const Scalar& b) const { return mul(a, inv(b)); }

Scalar Field::pow(const Scalar& a, long e) const {
    if (e < 0) return pow(inv(a), -e);
    if (kind_ == Kind::prime) return Scalar(mod_pow(a.res(), e, p_));
    mpq_class r;
    mpz_pow_ui(mpq_numref(r.get_mpq_t()), mpq_numref(a.rat().get_mpq_t()), (unsigned long)e);
    mpz_pow_ui(mpq_denref(r.get_mpq_t()), mpq_denref(a.rat().get_mpq_t()), (unsigned long)e);
    return Scalar(r);  // powers of a canonical rational stay canonical
}

bool Field::is_zero(const Scalar& a) const {
    if (kind_ == Kind::rationals) return a.rat() == 0;
    return a.res() == 0;
}

bool Field::is_one(const Scalar& a) const {
    if (kind_ == Kind::rationals) return a.rat() == 1;
    return a.res() == 1 % p_;
}

std::string Field::to_string(const Scalar& a) const {
    if (kind_ == Kind::rationals) return a.rat().get_str();
    return std::to_string(a.res());
}

std::string Field::describe() const {
    if (kind_ == Kind::rationals) return "Q";
    return "Fp:" + std::to_string(p_);
}

OrderResult Field::mul_order() const {
    if (kind_ == Kind::rationals) {
        if (q_.rat() == 1) return {true, 1};
        if (q_.rat() == -1) return {true, 2};
        return {false, 0};
    }
    long long v = q_.res(), acc = v;
    long n = 1;
    while (acc != 1) {
        acc = mod_mul(acc, v, p_);
        ++n;
    }
    return {true, n};
}

PowerSolutions solve_q_power(const Field& f, const Scalar& target) {
    if (f.is_zero(target)) return {PowerSolutions::Kind::none, 0, 0};
    OrderResult o = f.mul_order();
    if (o.finite) {
        Scalar acc = f.one();
        for (long i = 0; i < o.order; ++i) {
            if (acc == target) return {PowerSolutions::Kind::residue_class, i, o.order};
            acc = f.mul(acc, f.q());
        }
        return {PowerSolutions::Kind::none, 0, 0};
    }
    /* o(q) infinite, so |q| != 1 and |q^i| is strictly monotone in i: at most
     * one exponent can match, pinned by magnitude comparison. */
    const mpq_class& qv = f.q().rat();
    const mpq_class& tv = target.rat();
    mpq_class aq = abs(qv), at = abs(tv);
    long i = 0;
    if (at != 1) {
        bool up = (aq > 1) == (at > 1);  // search direction along |q|^i
        mpq_class step = up ? aq : mpq_class(1 / aq);
        long sgn = up ? 1 : -1;
        mpq_class acc(1);
        bool found = false;
        // |step| > 1, so the loop passes |target| in O(log) iterations
        while (true) {
            if (acc == at) { found = true; break; }
            if ((at > 1 && acc > at) || (at < 1 && acc < at)) break;
            acc *= step;
            i += sgn;
            if (i > 4096 || i < -4096) break;  // unreachable for sane inputs
        }
        if (!found) return {PowerSolutions::Kind::none, 0, 0};
    }
    if (f.q_pow(i) == target) return {PowerSolutions::Kind::unique_exp, i, 0};
    return {PowerSolutions::Kind::none, 0, 0};
}

bool q_power_in_range(const Field& f, const Scalar& target,
                      std::optional<long> lo, std::optional<long> hi) {
    PowerSolutions s = solve_q_power(f, target);
    switch (s.kind) {
        case PowerSolutions::Kind::none:
            return false;
        case PowerSolutions::Kind::unique_exp:
            return (!lo || s.i0 >= *lo) && (!hi || s.i0 <= *hi);
        case PowerSolutions::Kind::residue_class: {
            if (!lo || !hi) return true;  // any residue class meets a half-line
            for (long i = *lo; i <= *hi; ++i)
                if (((i - s.i0) % s.period + s.period) % s.period == 0) return true;
            return false;
        }
    }
    return false;
}

}  // namespace lamq

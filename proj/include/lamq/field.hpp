#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace lamq {

/* A scalar is either an arbitrary-precision rational or a reduced residue
 * mod p.  All arithmetic goes through the owning Field, which knows which
 * representation is in use; a Scalar never mixes fields. */
class Scalar {
public:
    Scalar() : v_(mpq_class(0)) {}
    explicit Scalar(mpq_class q) : v_(std::move(q)) {}
    explicit Scalar(long long r) : v_(r) {}

    const mpq_class& rat() const { return std::get<mpq_class>(v_); }
    long long res() const { return std::get<long long>(v_); }
    bool is_rat() const { return std::holds_alternative<mpq_class>(v_); }

    bool operator==(const Scalar& o) const { return v_ == o.v_; }
    bool operator!=(const Scalar& o) const { return v_ != o.v_; }

private:
    std::variant<mpq_class, long long> v_;
};

struct OrderResult {
    bool finite = false;
    long order = 0;  // meaningful only when finite
};

/* Exact coefficient field: the rationals, or F_p for a prime p.  Carries the
 * distinguished non-zero parameter q.  Rationals are kept in lowest terms
 * with positive denominator (mpq canonical form), so iterated syzygy
 * computations never lose exactness or blow up silently. */
class Field {
public:
    enum class Kind { rationals, prime };

    // spec: "Q" or "Fp:<p>"; q_literal: decimal integer or "a/b"
    static Field make(const std::string& spec, const std::string& q_literal);

    Kind kind() const { return kind_; }
    bool is_rationals() const { return kind_ == Kind::rationals; }
    long long characteristic() const { return p_; }  // 0 for the rationals
    const Scalar& q() const { return q_; }

    Scalar zero() const;
    Scalar one() const;
    Scalar from_long(long long n) const;
    Scalar parse(const std::string& literal) const;

    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;  // throws on zero
    Scalar div(const Scalar& a, const Scalar& b) const;
    Scalar pow(const Scalar& a, long e) const;  // e may be negative
    Scalar q_pow(long e) const { return pow(q_, e); }

    bool is_zero(const Scalar& a) const;
    bool is_one(const Scalar& a) const;
    bool eq(const Scalar& a, const Scalar& b) const { return a == b; }

    std::string to_string(const Scalar& a) const;
    std::string describe() const;  // "Q" or "Fp:<p>"

    OrderResult mul_order() const;  // multiplicative order of q

    bool same_as(const Field& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && q_ == o.q_;
    }

private:
    Field() = default;
    Kind kind_ = Kind::rationals;
    long long p_ = 0;
    Scalar q_;
};

/* Solutions i of q^i = target, decided exactly.
 *   none          - no integer exponent works
 *   unique_exp    - exactly one exponent i0 (|q| != 1 over Q)
 *   residue_class - all i with i = i0 (mod period): finite order case
 * Used by the closed-form classifiers to answer "b = -q^i for some i in R"
 * for unbounded ranges R without any windowed scanning. */
struct PowerSolutions {
    enum class Kind { none, unique_exp, residue_class } kind;
    long i0 = 0;
    long period = 0;
};

PowerSolutions solve_q_power(const Field& f, const Scalar& target);

// does q^i = target hold for some i with lo <= i <= hi?  (nullopt = unbounded)
bool q_power_in_range(const Field& f, const Scalar& target,
                      std::optional<long> lo, std::optional<long> hi);

}  // namespace lamq

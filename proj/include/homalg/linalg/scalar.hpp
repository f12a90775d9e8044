#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cassert>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>

namespace homalg {

// Expression templates off: scalars must behave as plain values in generic code.
using Integer = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::rational_adaptor<boost::multiprecision::cpp_int_backend<>>,
                                               boost::multiprecision::et_off>;

bool is_prime(std::uint64_t n);

// Element of the prime field F_p. The modulus travels with the value so that
// arithmetic never depends on global state.
class Fp
{
public:
    Fp() = default;
    Fp(std::int64_t v, std::uint64_t p) : p_(p)
    {
        assert(p > 1);
        std::int64_t r = v % static_cast<std::int64_t>(p);
        v_ = static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
    }

    std::uint64_t value() const { return v_; }
    std::uint64_t modulus() const { return p_; }

    friend Fp operator+(Fp a, Fp b)
    {
        assert(a.p_ == b.p_);
        std::uint64_t s = a.v_ + b.v_;
        return raw(s >= a.p_ ? s - a.p_ : s, a.p_);
    }
    friend Fp operator-(Fp a, Fp b)
    {
        assert(a.p_ == b.p_);
        return raw(a.v_ >= b.v_ ? a.v_ - b.v_ : a.v_ + a.p_ - b.v_, a.p_);
    }
    friend Fp operator*(Fp a, Fp b)
    {
        assert(a.p_ == b.p_);
        return raw(static_cast<std::uint64_t>((static_cast<unsigned __int128>(a.v_) * b.v_) % a.p_), a.p_);
    }
    Fp operator-() const { return raw(v_ == 0 ? 0 : p_ - v_, p_); }
    Fp& operator+=(Fp o) { return *this = *this + o; }
    Fp& operator-=(Fp o) { return *this = *this - o; }
    Fp& operator*=(Fp o) { return *this = *this * o; }
    friend bool operator==(Fp a, Fp b) { return a.v_ == b.v_ && a.p_ == b.p_; }

    Fp inverse() const
    {
        if (v_ == 0)
            throw std::domain_error("inverse of zero in F_p");
        // Fermat: a^(p-2)
        std::uint64_t e = p_ - 2;
        Fp base = *this, acc = raw(1, p_);
        while (e) {
            if (e & 1)
                acc *= base;
            base *= base;
            e >>= 1;
        }
        return acc;
    }

    friend std::ostream& operator<<(std::ostream& os, Fp a) { return os << a.v_; }

private:
    static Fp raw(std::uint64_t v, std::uint64_t p)
    {
        Fp r;
        r.v_ = v;
        r.p_ = p;
        return r;
    }

    std::uint64_t v_ = 0;
    std::uint64_t p_ = 0;
};

// Runtime choice of ground ring: a prime field, the rationals, or the integers.
struct Coefficients
{
    enum class Kind { PrimeField, Rationals, Integers };

    Kind kind = Kind::PrimeField;
    std::uint64_t p = 2;

    static Coefficients prime_field(std::uint64_t p);
    static Coefficients rationals() { return {Kind::Rationals, 0}; }
    static Coefficients integers() { return {Kind::Integers, 0}; }

    bool is_field() const { return kind != Kind::Integers; }
    std::string name() const;  // "F2", "Q", "Z"
    static Coefficients parse(const std::string& text);

    friend bool operator==(const Coefficients&, const Coefficients&) = default;
};

// Scalar domains. Each provides constants and the conversion from integers;
// algorithms are templated on the scalar and take the domain by reference.
template <class S>
struct Domain;

template <>
struct Domain<Fp>
{
    static constexpr bool is_field = true;
    std::uint64_t p = 2;

    Fp zero() const { return Fp(0, p); }
    Fp one() const { return Fp(1, p); }
    Fp from(std::int64_t v) const { return Fp(v, p); }
    Fp from(const Integer& v) const
    {
        Integer r = v % p;
        if (r < 0)
            r += p;
        return Fp(static_cast<std::int64_t>(r), p);
    }
};

template <>
struct Domain<Rational>
{
    static constexpr bool is_field = true;

    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    Rational from(std::int64_t v) const { return Rational(v); }
    Rational from(const Integer& v) const { return Rational(v); }
};

template <>
struct Domain<Integer>
{
    static constexpr bool is_field = false;

    Integer zero() const { return Integer(0); }
    Integer one() const { return Integer(1); }
    Integer from(std::int64_t v) const { return Integer(v); }
    Integer from(const Integer& v) const { return v; }
};

inline bool is_zero(const Fp& a) { return a.value() == 0; }
inline bool is_zero(const Rational& a) { return a == 0; }
inline bool is_zero(const Integer& a) { return a == 0; }

inline Fp inverse(const Fp& a) { return a.inverse(); }
inline Rational inverse(const Rational& a)
{
    if (a == 0)
        throw std::domain_error("inverse of zero rational");
    return Rational(1) / a;
}

// Calls f(Domain<S>{...}) for the scalar type matching the runtime coefficients.
template <class F>
decltype(auto) dispatch(const Coefficients& c, F&& f)
{
    switch (c.kind) {
    case Coefficients::Kind::PrimeField:
        return f(Domain<Fp>{c.p});
    case Coefficients::Kind::Rationals:
        return f(Domain<Rational>{});
    case Coefficients::Kind::Integers:
        break;
    }
    return f(Domain<Integer>{});
}

}  // namespace homalg

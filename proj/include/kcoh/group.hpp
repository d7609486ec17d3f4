#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <random>
#include <string>

namespace kcoh {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct GroupElem {
    Rational v;
    bool operator==(const GroupElem&) const = default;
};

/// Coefficient system for cochains and cocycle values: the integers, the
/// integers mod n (n >= 2), or the rationals mod 1 written additively with
/// canonical representatives p/q in [0,1).  All arithmetic is exact.
class Group {
public:
    enum class Kind { Integers, IntegersMod, RationalsMod1 };

    static Group integers() { return Group(Kind::Integers, 0); }
    static Group integers_mod(long n);
    static Group rationals_mod1() { return Group(Kind::RationalsMod1, 0); }

    Kind kind() const { return kind_; }
    long modulus() const { return modulus_; }
    bool finite() const { return kind_ == Kind::IntegersMod; }

    bool operator==(const Group&) const = default;

    GroupElem zero() const { return {}; }
    GroupElem reduce(const Rational& raw) const;  // canonical representative
    GroupElem from_long(long x) const { return reduce(Rational(x)); }

    GroupElem add(const GroupElem& a, const GroupElem& b) const { return reduce(a.v + b.v); }
    GroupElem sub(const GroupElem& a, const GroupElem& b) const { return reduce(a.v - b.v); }
    GroupElem neg(const GroupElem& a) const { return reduce(-a.v); }
    bool is_zero(const GroupElem& a) const { return a.v == 0; }

    /// Seeded draw used by the randomized law suites; stable across platforms
    /// (avoids std::uniform_int_distribution on purpose).
    GroupElem sample(std::mt19937_64& rng) const;

    std::string str(const GroupElem& a) const;          // "3" or "1/4"
    std::optional<GroupElem> parse(const std::string&) const;

    std::string name() const;                           // "Z", "Z/4", "Q/Z"
    static std::optional<Group> parse_name(const std::string&);

private:
    Group(Kind k, long n) : kind_(k), modulus_(n) {}
    Kind kind_;
    long modulus_;
};

}  // namespace kcoh

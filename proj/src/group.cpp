#include "kcoh/group.hpp"

#include <stdexcept>

namespace kcoh {

Group Group::integers_mod(long n) {
    if (n < 2) throw std::invalid_argument("Group: modulus must be >= 2");
    return Group(Kind::IntegersMod, n);
}

GroupElem Group::reduce(const Rational& raw) const {
    switch (kind_) {
        case Kind::Integers: {
            if (denominator(raw) != 1)
                throw std::invalid_argument("Group: non-integral value in Z");
            return {raw};
        }
        case Kind::IntegersMod: {
            if (denominator(raw) != 1)
                throw std::invalid_argument("Group: non-integral value in Z/n");
            Int r = numerator(raw) % modulus_;
            if (r < 0) r += modulus_;
            return {Rational(r)};
        }
        case Kind::RationalsMod1: {
            // reduce into [0,1); cpp_rational keeps p/q in lowest terms
            Int q = denominator(raw);
            Int p = numerator(raw) % q;
            if (p < 0) p += q;
            return {Rational(p, q)};
        }
    }
    throw std::logic_error("Group: bad kind");
}

GroupElem Group::sample(std::mt19937_64& rng) const {
    auto draw = [&rng](std::uint64_t n) { return static_cast<long>(rng() % n); };
    switch (kind_) {
        case Kind::Integers:
            return from_long(draw(41) - 20);
        case Kind::IntegersMod:
            return from_long(draw(static_cast<std::uint64_t>(modulus_)));
        case Kind::RationalsMod1: {
            long q = draw(12) + 1;
            long p = draw(static_cast<std::uint64_t>(q));
            return reduce(Rational(p, q));
        }
    }
    throw std::logic_error("Group: bad kind");
}

std::string Group::str(const GroupElem& a) const {
    if (denominator(a.v) == 1) return numerator(a.v).str();
    return numerator(a.v).str() + "/" + denominator(a.v).str();
}

std::optional<GroupElem> Group::parse(const std::string& s) const {
    try {
        auto slash = s.find('/');
        Rational v = slash == std::string::npos
                         ? Rational(Int(s))
                         : Rational(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
        return reduce(v);
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string Group::name() const {
    switch (kind_) {
        case Kind::Integers: return "Z";
        case Kind::IntegersMod: return "Z/" + std::to_string(modulus_);
        case Kind::RationalsMod1: return "Q/Z";
    }
    throw std::logic_error("Group: bad kind");
}

std::optional<Group> Group::parse_name(const std::string& s) {
    if (s == "Z") return integers();
    if (s == "Q/Z") return rationals_mod1();
    if (s.rfind("Z/", 0) == 0) {
        try {
            long n = std::stol(s.substr(2));
            if (n >= 2) return integers_mod(n);
        } catch (const std::exception&) {
        }
    }
    return std::nullopt;
}

}  // namespace kcoh

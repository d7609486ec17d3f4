#pragma once

#include <cstddef>
#include <initializer_list>
#include <string>
#include <vector>

namespace kcoh {

/// Exponent vector in Z^k.  Morphism degrees live in N^k; differences of
/// degrees (groupoid cocycle values, shift offsets) may have negative entries.
class Degree {
public:
    Degree() = default;
    explicit Degree(int k) : c_(static_cast<std::size_t>(k), 0) {}
    Degree(std::initializer_list<int> xs) : c_(xs) {}

    static Degree unit(int k, int i);  // e_i, i zero-based
    static Degree ones(int k);         // (1,...,1)

    int rank() const { return static_cast<int>(c_.size()); }
    int operator[](int i) const { return c_[static_cast<std::size_t>(i)]; }
    int& operator[](int i) { return c_[static_cast<std::size_t>(i)]; }

    int total() const;  // coordinate sum
    bool nonneg() const;
    bool is_zero() const;

    bool operator==(const Degree&) const = default;
    bool operator<=(const Degree& o) const;  // componentwise

    Degree operator+(const Degree& o) const;
    Degree operator-(const Degree& o) const;
    Degree join(const Degree& o) const;  // componentwise max
    Degree meet(const Degree& o) const;  // componentwise min

    // Strict lexicographic order; used only to make enumerations deterministic.
    bool lex_less(const Degree& o) const;

    std::string str() const;

private:
    std::vector<int> c_;
};

}  // namespace kcoh

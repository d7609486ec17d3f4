#include "kcoh/degree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace kcoh {

Degree Degree::unit(int k, int i) {
    Degree d(k);
    d[i] = 1;
    return d;
}

Degree Degree::ones(int k) {
    Degree d(k);
    std::fill(d.c_.begin(), d.c_.end(), 1);
    return d;
}

int Degree::total() const { return std::accumulate(c_.begin(), c_.end(), 0); }

bool Degree::nonneg() const {
    return std::all_of(c_.begin(), c_.end(), [](int x) { return x >= 0; });
}

bool Degree::is_zero() const {
    return std::all_of(c_.begin(), c_.end(), [](int x) { return x == 0; });
}

bool Degree::operator<=(const Degree& o) const {
    if (rank() != o.rank()) throw std::invalid_argument("Degree: rank mismatch");
    for (int i = 0; i < rank(); ++i)
        if (c_[i] > o.c_[i]) return false;
    return true;
}

Degree Degree::operator+(const Degree& o) const {
    if (rank() != o.rank()) throw std::invalid_argument("Degree: rank mismatch");
    Degree r(rank());
    for (int i = 0; i < rank(); ++i) r[i] = c_[i] + o.c_[i];
    return r;
}

Degree Degree::operator-(const Degree& o) const {
    if (rank() != o.rank()) throw std::invalid_argument("Degree: rank mismatch");
    Degree r(rank());
    for (int i = 0; i < rank(); ++i) r[i] = c_[i] - o.c_[i];
    return r;
}

Degree Degree::join(const Degree& o) const {
    if (rank() != o.rank()) throw std::invalid_argument("Degree: rank mismatch");
    Degree r(rank());
    for (int i = 0; i < rank(); ++i) r[i] = std::max(c_[i], o.c_[i]);
    return r;
}

Degree Degree::meet(const Degree& o) const {
    if (rank() != o.rank()) throw std::invalid_argument("Degree: rank mismatch");
    Degree r(rank());
    for (int i = 0; i < rank(); ++i) r[i] = std::min(c_[i], o.c_[i]);
    return r;
}

bool Degree::lex_less(const Degree& o) const {
    return std::lexicographical_compare(c_.begin(), c_.end(), o.c_.begin(), o.c_.end());
}

std::string Degree::str() const {
    std::string s = "(";
    for (int i = 0; i < rank(); ++i) {
        if (i) s += ",";
        s += std::to_string(c_[i]);
    }
    return s + ")";
}

}  // namespace kcoh

// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fbmc {

using cd = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;

// Precondition violated by the caller.
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// An internal self-check failed; the numbers can't be trusted.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Pseudo-pilot too small to divide by.
class DegeneratePilotError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Time-frequency lattice, subcarrier index fastest. Column n (one OQAM
// time slot) is contiguous.
template <class T>
class Lattice {
public:
    Lattice() = default;
    Lattice(int subcarriers, int columns, T fill = T{})
    {
        if (subcarriers <= 0 || columns < 0)
            throw InvalidArgument("Lattice: subcarriers must be positive and columns non-negative");
        rows_ = subcarriers;
        cols_ = columns;
        data_.assign(static_cast<std::size_t>(rows_) * static_cast<std::size_t>(cols_), fill);
    }

    int subcarriers() const { return rows_; }
    int columns() const { return cols_; }
    bool empty() const { return data_.empty(); }

    T& operator()(int m, int n) { return data_[index(m, n)]; }
    const T& operator()(int m, int n) const { return data_[index(m, n)]; }

    T& at(int m, int n)
    {
        check(m, n);
        return data_[index(m, n)];
    }
    const T& at(int m, int n) const
    {
        check(m, n);
        return data_[index(m, n)];
    }

    std::span<T> column(int n) { return {data_.data() + index(0, n), static_cast<std::size_t>(rows_)}; }
    std::span<const T> column(int n) const
    {
        return {data_.data() + index(0, n), static_cast<std::size_t>(rows_)};
    }

    std::span<T> raw() { return data_; }
    std::span<const T> raw() const { return data_; }

private:
    std::size_t index(int m, int n) const
    {
        return static_cast<std::size_t>(n) * static_cast<std::size_t>(rows_) + static_cast<std::size_t>(m);
    }
    void check(int m, int n) const
    {
        if (m < 0 || m >= rows_ || n < 0 || n >= cols_)
            throw InvalidArgument("Lattice: index (" + std::to_string(m) + ", " + std::to_string(n) +
                                  ") out of range");
    }

    int rows_ = 0;
    int cols_ = 0;
    std::vector<T> data_;
};

using ComplexLattice = Lattice<cd>;
using RealLattice = Lattice<double>;

} // namespace fbmc

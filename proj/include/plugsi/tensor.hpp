#pragma once

#include <cmath>
#include <cstdint>
#include <cstring>
#include <initializer_list>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace plugsi {

using Shape = std::vector<std::size_t>;

inline std::string shape_str(const Shape& s) {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (i) os << 'x';
        os << s[i];
    }
    os << ']';
    return os.str();
}

/// Dense row-major tensor of doubles. Shape is arbitrary rank; most of the
/// codebase uses rank 1-3.
struct Tensor {
    Shape shape;
    std::vector<double> v;

    Tensor() = default;
    Tensor(Shape s, std::vector<double> values) : shape(std::move(s)), v(std::move(values)) {
        if (numel_of(shape) != v.size())
            throw std::invalid_argument("Tensor: shape " + shape_str(shape) + " does not match " +
                                        std::to_string(v.size()) + " values");
    }

    static std::size_t numel_of(const Shape& s) {
        return std::accumulate(s.begin(), s.end(), std::size_t{1}, std::multiplies<>());
    }

    static Tensor zeros(Shape s) {
        std::size_t n = numel_of(s);
        return Tensor(std::move(s), std::vector<double>(n, 0.0));
    }

    static Tensor full(Shape s, double x) {
        std::size_t n = numel_of(s);
        return Tensor(std::move(s), std::vector<double>(n, x));
    }

    static Tensor identity(std::size_t n) {
        Tensor t = zeros({n, n});
        for (std::size_t i = 0; i < n; ++i) t.at(i, i) = 1.0;
        return t;
    }

    static Tensor scalar(double x) { return Tensor({1}, {x}); }

    static Tensor row_matrix(std::initializer_list<std::initializer_list<double>> rows) {
        std::size_t r = rows.size();
        std::size_t c = r ? rows.begin()->size() : 0;
        Tensor t = zeros({r, c});
        std::size_t i = 0;
        for (const auto& row : rows) {
            if (row.size() != c) throw std::invalid_argument("row_matrix: ragged rows");
            std::size_t j = 0;
            for (double x : row) t.at(i, j++) = x;
            ++i;
        }
        return t;
    }

    std::size_t numel() const { return v.size(); }
    std::size_t rank() const { return shape.size(); }

    // 2-D accessors
    std::size_t rows() const { return shape.at(0); }
    std::size_t cols() const { return shape.at(1); }
    double& at(std::size_t i, std::size_t j) { return v[i * shape[1] + j]; }
    double at(std::size_t i, std::size_t j) const { return v[i * shape[1] + j]; }

    // 3-D accessors (e.g. batch x node x step)
    double& at(std::size_t b, std::size_t i, std::size_t j) {
        return v[(b * shape[1] + i) * shape[2] + j];
    }
    double at(std::size_t b, std::size_t i, std::size_t j) const {
        return v[(b * shape[1] + i) * shape[2] + j];
    }

    /// Slice [b,:,:] of a rank-3 tensor into a fresh rank-2 tensor.
    Tensor slice0(std::size_t b) const {
        if (rank() != 3) throw std::invalid_argument("slice0: rank-3 tensor required");
        Tensor out = zeros({shape[1], shape[2]});
        std::size_t n = shape[1] * shape[2];
        std::memcpy(out.v.data(), v.data() + b * n, n * sizeof(double));
        return out;
    }

    bool same_shape(const Tensor& o) const { return shape == o.shape; }

    bool all_finite() const {
        for (double x : v)
            if (!std::isfinite(x)) return false;
        return true;
    }

    bool operator==(const Tensor& o) const { return shape == o.shape && v == o.v; }
};

inline void require_same_shape(const Tensor& a, const Tensor& b, const char* what) {
    if (!a.same_shape(b))
        throw std::invalid_argument(std::string(what) + ": shape mismatch " + shape_str(a.shape) +
                                    " vs " + shape_str(b.shape));
}

/// FNV-1a over the raw bytes of the values, in storage order. Used for
/// frozen-parameter checks; bitwise, so -0.0 and 0.0 hash differently.
inline std::uint64_t fnv1a64(std::uint64_t h, const void* data, std::size_t len) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

inline std::uint64_t checksum(const Tensor& t, std::uint64_t h = 0xcbf29ce484222325ull) {
    return fnv1a64(h, t.v.data(), t.v.size() * sizeof(double));
}

}  // namespace plugsi

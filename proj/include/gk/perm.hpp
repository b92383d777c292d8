#pragma once

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

#include "gk/errors.hpp"

namespace gk {

// Permutation of {0, ..., degree-1}, stored as the image array.
class Perm {
public:
    Perm() = default;

    explicit Perm(std::vector<int> images) : img_(std::move(images)) {
        std::vector<char> seen(img_.size(), 0);
        for (int v : img_) {
            if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v])
                throw NotAPermutation("image array is not a bijection");
            seen[v] = 1;
        }
    }

    static Perm identity(int degree) {
        std::vector<int> img(degree);
        std::iota(img.begin(), img.end(), 0);
        return Perm(std::move(img));
    }

    // Cycles use 0-based points; omitted points are fixed.
    static Perm from_cycles(int degree, const std::vector<std::vector<int>>& cycles) {
        std::vector<int> img(degree);
        std::iota(img.begin(), img.end(), 0);
        for (const auto& c : cycles)
            for (std::size_t i = 0; i < c.size(); ++i) {
                int from = c[i], to = c[(i + 1) % c.size()];
                if (from < 0 || from >= degree || to < 0 || to >= degree)
                    throw NotAPermutation("cycle point out of range");
                img[from] = to;
            }
        return Perm(std::move(img));
    }

    int degree() const { return static_cast<int>(img_.size()); }
    int operator()(int i) const { return img_[i]; }
    const std::vector<int>& images() const { return img_; }

    // this∘other: apply `other` first.
    Perm after(const Perm& other) const {
        std::vector<int> img(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) img[i] = img_[other.img_[i]];
        Perm p;
        p.img_ = std::move(img);  // composition of bijections, skip re-validation
        return p;
    }

    Perm inverse() const {
        std::vector<int> img(img_.size());
        for (std::size_t i = 0; i < img_.size(); ++i) img[img_[i]] = static_cast<int>(i);
        Perm p;
        p.img_ = std::move(img);
        return p;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < img_.size(); ++i)
            if (img_[i] != static_cast<int>(i)) return false;
        return true;
    }

    friend bool operator==(const Perm& a, const Perm& b) = default;
    friend auto operator<=>(const Perm& a, const Perm& b) = default;

private:
    std::vector<int> img_;
};

struct PermHash {
    std::size_t operator()(const Perm& p) const {
        std::size_t h = 1469598103934665603ull;
        for (int v : p.images()) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace gk

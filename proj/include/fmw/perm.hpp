#pragma once

#include <stdexcept>
#include <vector>

namespace fmw {

// Permutation of {0, ..., k-1}; to[i] is the image of i.
struct permutation {
    std::vector<int> to;

    permutation() = default;
    explicit permutation(std::vector<int> images) : to(std::move(images)) {
        std::vector<char> seen(to.size(), 0);
        for (int v : to) {
            if (v < 0 || v >= (int)to.size() || seen[v])
                throw std::invalid_argument("permutation: images are not a bijection");
            seen[v] = 1;
        }
    }

    static permutation identity(int k) {
        std::vector<int> im(k);
        for (int i = 0; i < k; ++i) im[i] = i;
        return permutation(std::move(im));
    }

    static permutation transposition(int k, int a, int b) {
        permutation p = identity(k);
        std::swap(p.to[a], p.to[b]);
        return p;
    }

    int size() const { return (int)to.size(); }
    int operator()(int i) const { return to[i]; }

    // image of a 1-based label
    int map1(int label) const { return to[label - 1] + 1; }

    bool is_identity() const {
        for (int i = 0; i < size(); ++i)
            if (to[i] != i) return false;
        return true;
    }

    permutation inverse() const {
        std::vector<int> im(to.size());
        for (int i = 0; i < size(); ++i) im[to[i]] = i;
        return permutation(std::move(im));
    }

    friend bool operator==(const permutation&, const permutation&) = default;
};

// (a * b)(i) = a(b(i))
inline permutation compose(const permutation& a, const permutation& b) {
    if (a.size() != b.size())
        throw std::invalid_argument("permutation: size mismatch in compose");
    std::vector<int> im(a.size());
    for (int i = 0; i < a.size(); ++i) im[i] = a.to[b.to[i]];
    return permutation(std::move(im));
}

} // namespace fmw

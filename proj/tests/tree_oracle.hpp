#pragma once

#include <cstdint>
#include <vector>

// Independent count of nested trees on k labelled leaves from the generating
// function identity 2A = x + exp(A) - 1: with a_n = #trees (EGF coefficients
// scaled by n!) and b_n the matching coefficients of exp(A),
//   a_n = sum_{j=0}^{n-2} C(n-1,j) a_{j+1} b_{n-1-j},
//   b_n = sum_{j=0}^{n-1} C(n-1,j) a_{j+1} b_{n-1-j}.
inline int64_t tree_count_oracle(int k) {
    std::vector<std::vector<int64_t>> binom(k + 1, std::vector<int64_t>(k + 1, 0));
    for (int i = 0; i <= k; ++i) {
        binom[i][0] = 1;
        for (int j = 1; j <= i; ++j)
            binom[i][j] = binom[i - 1][j - 1] + (j <= i - 1 ? binom[i - 1][j] : 0);
    }
    std::vector<int64_t> a(k + 1, 0), b(k + 1, 0);
    a[1] = 1;
    b[0] = 1;
    b[1] = 1;
    for (int n = 2; n <= k; ++n) {
        for (int j = 0; j <= n - 2; ++j) a[n] += binom[n - 1][j] * a[j + 1] * b[n - 1 - j];
        for (int j = 0; j <= n - 1; ++j) b[n] += binom[n - 1][j] * a[j + 1] * b[n - 1 - j];
    }
    return a[k];
}

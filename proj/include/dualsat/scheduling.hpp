#pragma once

#include <vector>

#include "dualsat/channel.hpp"

namespace dualsat {

struct Allocation {
    std::vector<int> sat1;
    std::vector<int> sat2;
};

// Greedy semi-orthogonal user selection. A candidate is admissible when the
// norm of its projection onto the span of the selected channels is at most
// alpha times its own norm; the admissible candidate with the largest
// orthogonal component is taken. Ties go to the lowest index.
std::vector<int> sus_select(const CMatrix& h_pool, double alpha, int max_users);

// adj[i][j] is true when users i and j are pairwise semi-orthogonal:
// |h_i h_j^H| <= alpha |h_i| |h_j|. Zero channels have no edges.
std::vector<std::vector<char>> semi_orthogonality_graph(const CMatrix& h_pool, double alpha);

struct SiuaParams {
    double alpha = 0.8;
    double lambda = 10.0;
    int k1 = 7;
    int k2 = 7;
};

// Joint greedy allocation of one pool to two satellites. Satellites take
// turns; on its turn satellite s scores each unallocated admissible user u as
//   |orthogonal part of h_u^s|^2 - lambda * (rx_u + tx_u)
// where rx_u is the power u would receive from the partner's current set
// through unit-norm ZF directions, and tx_u is the power the unit-norm ZF
// direction of u (inside s's set plus u) leaks onto the partner's users.
// With lambda > 0 only positive scores are admissible. The first turn goes to
// the satellite with the better best score; a satellite with no admissible
// candidate stops.
Allocation siua_allocate(const CMatrix& h1, const CMatrix& h2, const SiuaParams& params);

// Sum over both satellites' scheduled users of the unit-power ZF interference
// received from the other satellite's set.
double inter_satellite_interference(const CMatrix& h1, const CMatrix& h2, const Allocation& alloc);

CMatrix select_rows(const CMatrix& h, const std::vector<int>& rows);

}  // namespace dualsat

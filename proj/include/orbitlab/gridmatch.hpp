#pragma once

#include <cmath>
#include <map>
#include <vector>

#include "orbitlab/matrix.hpp"

namespace orbitlab {

/// Per-cell eigenvalue multiplicities failed to match at the requested mesh.
struct MultiplicityMismatchError : Error {
    long long cell_x, cell_y;
    double cell_side;
    int count_h, count_k;

    MultiplicityMismatchError(long long cx, long long cy, double side, int ch, int ck)
        : Error("eigenvalue multiplicities differ in grid cell (" + std::to_string(cx) + "," +
                std::to_string(cy) + ") at side " + std::to_string(side) + ": " +
                std::to_string(ch) + " vs " + std::to_string(ck)),
          cell_x(cx), cell_y(cy), cell_side(side), count_h(ch), count_k(ck) {}
};

struct GridUnitary {
    CMat unitary;
    double achieved_norm = 0.0;
    double cell_side = 0.0;
};

namespace detail {

inline std::pair<long long, long long> grid_cell(const Complex& z, double side) {
    return {(long long)std::floor(z.real() / side), (long long)std::floor(z.imag() / side)};
}

}  // namespace detail

/// Constructive unitary from the grid-matching argument: snap the eigenvalues
/// of both operators to the centers of a square grid whose cells have
/// diameter `mesh`; when the per-cell multiplicities agree, the permutation
/// pairing them cell by cell conjugates h to within mesh of k.
inline GridUnitary construct_unitary_grid(const NormalMatrix& h, const NormalMatrix& k,
                                          double mesh) {
    if (h.dim() != k.dim())
        throw DimensionMismatchError("matrices of different dimension");
    if (!(mesh > 0)) throw InvariantViolationError("mesh must be positive");

    const double side = mesh / std::sqrt(2.0);  // cell diameter = mesh
    SpectralDecomposition dh = eigen_normal(h), dk = eigen_normal(k);
    const Eigen::Index n = h.dim();

    std::map<std::pair<long long, long long>, std::vector<Eigen::Index>> cells_h, cells_k;
    for (Eigen::Index i = 0; i < n; ++i)
        cells_h[detail::grid_cell(dh.eigenvalues(i), side)].push_back(i);
    for (Eigen::Index j = 0; j < n; ++j)
        cells_k[detail::grid_cell(dk.eigenvalues(j), side)].push_back(j);

    for (const auto& [cell, hs] : cells_h) {
        auto it = cells_k.find(cell);
        int ck = it == cells_k.end() ? 0 : (int)it->second.size();
        if ((int)hs.size() != ck)
            throw MultiplicityMismatchError(cell.first, cell.second, side, (int)hs.size(), ck);
    }
    for (const auto& [cell, ks] : cells_k)
        if (cells_h.find(cell) == cells_h.end())
            throw MultiplicityMismatchError(cell.first, cell.second, side, 0, (int)ks.size());

    CMat p = CMat::Zero(n, n);
    for (const auto& [cell, hs] : cells_h) {
        const auto& ks = cells_k[cell];
        for (size_t t = 0; t < hs.size(); ++t) p(ks[t], hs[t]) = Complex(1, 0);
    }

    GridUnitary out;
    out.cell_side = side;
    out.unitary = dk.unitary * p * dh.unitary.adjoint();
    out.achieved_norm =
        operator_norm(out.unitary * h.mat() * out.unitary.adjoint() - k.mat());
    return out;
}

}  // namespace orbitlab

#pragma once

#include <string>

#include "twofluid/grid.hpp"

namespace twofluid {

// Field snapshot as CSV: columns x, y, alpha1, rho1, rho2, v1x, v1y, v2x,
// v2y, wx, wy, T, p_mix, M_mix; one row per interior cell, row-major,
// 17-significant-digit decimals. No timestamps, so identical runs produce
// byte-identical files.
void write_field_csv(const Field& f, const MixtureEOS& eos, const std::string& path);

// Rebuilds a field from a CSV written by write_field_csv. The grid must
// describe the same cell layout.
Field read_field_csv(const Grid& grid, const MixtureEOS& eos, const std::string& path);

// Legacy VTK STRUCTURED_POINTS (ASCII) with the same quantities.
void write_field_vtk(const Field& f, const MixtureEOS& eos, const std::string& path);

// Values along the main diagonal x = y (bubble plots): returns rows
// "s,alpha1,M_mix" where s is the arc length along the diagonal.
std::string diagonal_slice_csv(const Field& f, const MixtureEOS& eos);

}  // namespace twofluid

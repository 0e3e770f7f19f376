#pragma once

#include "crowdflow/grid.hpp"

namespace crowdflow {

/// (f_{i+1} - f_{i-1}) / (2 dx)
auto gradient_centered(const Field& f, const Grid1D&,
                       FieldParity parity = FieldParity::Even) -> Field;

/// (f_{i+1} + f_{i-1} - 2 f_i) / dx^2
auto laplacian(const Field& f, const Grid1D&,
               FieldParity parity = FieldParity::Even) -> Field;

/// Local Lax-Friedrichs divergence of flux q carried by conserved field U:
///   F_{i+1/2} = (q_i + q_{i+1}) / 2 - max(a_i, a_{i+1}) (U_{i+1} - U_i) / 2
///   out_i     = (F_{i+1/2} - F_{i-1/2}) / dx
/// Speeds a must be nonnegative.
auto rusanov_divergence(const Field& q, const Field& U, const Field& a, const Grid1D&,
                        FieldParity q_parity = FieldParity::Even,
                        FieldParity u_parity = FieldParity::Even) -> Field;

/// First-order upwind transport term u df/dx (non-conservative form).
auto upwind_advect(const Field& f, const Field& u, const Grid1D&,
                   FieldParity parity = FieldParity::Even) -> Field;

/// Plain-loop twins of the kernels above. Kept as the reference implementation the
/// parallel paths are tested against; results must agree bit for bit.
namespace ref {

auto gradient_centered(const Field& f, const Grid1D&,
                       FieldParity parity = FieldParity::Even) -> Field;
auto laplacian(const Field& f, const Grid1D&,
               FieldParity parity = FieldParity::Even) -> Field;
auto rusanov_divergence(const Field& q, const Field& U, const Field& a, const Grid1D&,
                        FieldParity q_parity = FieldParity::Even,
                        FieldParity u_parity = FieldParity::Even) -> Field;
auto upwind_advect(const Field& f, const Field& u, const Grid1D&,
                   FieldParity parity = FieldParity::Even) -> Field;

}  // namespace ref

}  // namespace crowdflow

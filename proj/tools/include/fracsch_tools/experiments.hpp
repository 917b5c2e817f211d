#pragma once

#include "fracsch/maxreg.hpp"
#include "fracsch/nonlinear.hpp"
#include "fracsch_tools/config.hpp"
#include "fracsch_tools/csv.hpp"

namespace fracsch::tools {

ensemble::EnsembleSpec ensemble_spec(const RunConfig& cfg);
solver::SolveConfig solve_config(const RunConfig& cfg);

/// zero, basis vector of mode 1, or member 0 of the seeded random vectors.
SpectralVector initial_value(const RunConfig& cfg, const DiagonalOperator& A);
/// zero or member 0 of the seeded random fields.
SpectralField forcing_field(const RunConfig& cfg, const DiagonalOperator& A, const TimeGrid& grid);
/// x rescaled so that interp_norm(x) = target (x unchanged when it is zero).
SpectralVector with_interp_norm(const DiagonalOperator& A, SpectralVector x, double alpha, double p, double target);

/// F(u) = u - |u|^2 u on the sine collocation points.
cplx cubic(cplx u);
/// Diagonal family with s(u) = min(1, ||u(t)|| / r).
nonlinear::OperatorMap ball_family(double delta, double r);

/// fk_lemma_check on u = J^alpha f for every ensemble field f; the report of
/// the member with the largest lhs/rhs, with passed = all members passed.
maxreg::RegularityReport fk_lemma_ensemble(double alpha, double p, const DiagonalOperator& A, const TimeGrid& grid,
                                           const ensemble::EnsembleSpec& ens);

CsvTable spectral_table(const SpectralField& u);
/// t, x, re, im, abs2 on the collocation points (dirichlet_laplacian_1d only).
CsvTable physical_table(const SpectralField& u);
/// t followed by |u|^2 at every collocation point.
CsvTable plot_table(const SpectralField& u);
CsvTable report_table(const std::vector<maxreg::RegularityReport>& reports);
CsvTable trace_table(const nonlinear::IterationTrace& trace);

}  // namespace fracsch::tools

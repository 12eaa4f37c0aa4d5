#pragma once
/// @file experiment.hpp
/// Scenario dispatch.

#include "nslab/lab/config.hpp"
#include "nslab/lab/report.hpp"

namespace nslab::lab {

/// Deterministic in (config, config.seed). Solver aborts come back as a report
/// with `error` set; invalid configurations throw InvalidArgument.
Report run_experiment(const ExperimentConfig& config);

/// sup over the ball of radius `radius` about the box centre of |field|.
double ball_sup(const spectral::VectorField& field, double radius);

}  // namespace nslab::lab

#pragma once

#include "nslab/spectral/fields.hpp"

namespace nslab::evolution {

/// p with p_hat = -(k_i k_j / |k|^2) (u_i u_j)^ and zero mean; the product
/// is dealiased.
spectral::ScalarField pressure_field(const spectral::VectorField& u);

}  // namespace nslab::evolution

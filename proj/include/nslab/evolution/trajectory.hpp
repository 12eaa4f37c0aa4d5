#pragma once

/// @file trajectory.hpp
/// Time-indexed sequences of vector fields and their binary cache format.

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "nslab/spectral/fields.hpp"

namespace nslab::evolution {

using spectral::Grid3;
using spectral::ScalarField;
using spectral::VectorField;

enum class FlowKind { ns = 0, heat = 1, picard = 2, derived = 3 };

struct FlowTag {
  FlowKind kind = FlowKind::derived;
  int picard_index = 0;

  static FlowTag ns() { return {FlowKind::ns, 0}; }
  static FlowTag heat() { return {FlowKind::heat, 0}; }
  static FlowTag picard(int k) { return {FlowKind::picard, k}; }
  static FlowTag derived() { return {FlowKind::derived, 0}; }
  /// "ns", "heat", "picard_2", "derived".
  std::string label() const;
  bool operator==(const FlowTag&) const = default;
};

class Trajectory {
 public:
  explicit Trajectory(FlowTag tag = FlowTag::derived()) : tag_(tag) {}

  /// Times must increase strictly and grids must agree. ns, heat and picard
  /// flows only accept snapshots flagged solenoidal.
  void append(double t, VectorField snapshot);

  const FlowTag& tag() const noexcept { return tag_; }
  std::size_t size() const noexcept { return times_.size(); }
  bool empty() const noexcept { return times_.empty(); }
  std::span<const double> times() const noexcept { return times_; }
  std::span<const VectorField> snapshots() const noexcept { return snapshots_; }
  double time(std::size_t i) const { return times_.at(i); }
  const VectorField& at(std::size_t i) const { return snapshots_.at(i); }
  const VectorField& back() const { return snapshots_.back(); }
  const Grid3& grid() const;

  /// Index of the node equal to t up to 1e-12 relative; throws otherwise.
  std::size_t index_of(double t) const;
  bool same_schedule(const Trajectory& other) const;

 private:
  FlowTag tag_;
  std::vector<double> times_;
  std::vector<VectorField> snapshots_;
};

/// Pointwise combination a * x + b * y on a shared schedule.
Trajectory combine(double a, const Trajectory& x, double b, const Trajectory& y, FlowTag tag);
/// Pointwise product of each snapshot with a scalar field.
Trajectory multiply(const Trajectory& x, const ScalarField& weight);

/// Flat little-endian layout. Each snapshot is a header (magic, version,
/// byte-order marker, n, L, time, flow kind, Picard index) followed by the
/// three physical component arrays in row-major order.
void write_trajectory(const std::filesystem::path& path, const Trajectory& traj);
Trajectory read_trajectory(const std::filesystem::path& path);

}  // namespace nslab::evolution

#include "nslab/evolution/trajectory.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <optional>

#include "nslab/errors.hpp"

namespace nslab::evolution {
namespace {

constexpr char kMagic[8] = {'N', 'S', 'L', 'A', 'B', 'S', 'N', 'P'};
constexpr std::uint32_t kVersion = 1;
constexpr std::uint32_t kByteOrderMarker = 0x01020304u;

template <class T>
T to_little(T v) {
  if constexpr (std::endian::native == std::endian::little) {
    return v;
  } else {
    unsigned char b[sizeof(T)];
    std::memcpy(b, &v, sizeof(T));
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(b[i], b[sizeof(T) - 1 - i]);
    std::memcpy(&v, b, sizeof(T));
    return v;
  }
}

template <class T>
void put(std::ostream& out, T v) {
  v = to_little(v);
  out.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T get(std::istream& in) {
  T v;
  in.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!in) throw InvalidArgument("truncated trajectory file");
  return to_little(v);
}

bool requires_solenoidal(FlowKind k) {
  return k == FlowKind::ns || k == FlowKind::heat || k == FlowKind::picard;
}

}  // namespace

std::string FlowTag::label() const {
  switch (kind) {
    case FlowKind::ns: return "ns";
    case FlowKind::heat: return "heat";
    case FlowKind::picard: return "picard_" + std::to_string(picard_index);
    case FlowKind::derived: return "derived";
  }
  return "derived";
}

void Trajectory::append(double t, VectorField snapshot) {
  require(std::isfinite(t), "snapshot time must be finite");
  if (!times_.empty()) {
    require(t > times_.back(), "snapshot times must increase strictly");
    require(snapshot.grid() == snapshots_.front().grid(), "snapshots must share one grid");
  }
  if (requires_solenoidal(tag_.kind))
    require(snapshot.solenoidal(), "flow " + tag_.label() + " only holds solenoidal snapshots");
  times_.push_back(t);
  snapshots_.push_back(std::move(snapshot));
}

const Grid3& Trajectory::grid() const {
  require(!snapshots_.empty(), "empty trajectory has no grid");
  return snapshots_.front().grid();
}

std::size_t Trajectory::index_of(double t) const {
  for (std::size_t i = 0; i < times_.size(); ++i)
    if (std::abs(times_[i] - t) <= 1e-12 * std::max(1.0, std::abs(t))) return i;
  throw InvalidArgument("time " + std::to_string(t) + " is not a snapshot time");
}

bool Trajectory::same_schedule(const Trajectory& other) const {
  if (other.size() != size()) return false;
  for (std::size_t i = 0; i < size(); ++i)
    if (std::abs(times_[i] - other.times_[i]) > 1e-12 * std::max(1.0, std::abs(times_[i])))
      return false;
  return empty() || grid() == other.grid();
}

Trajectory combine(double a, const Trajectory& x, double b, const Trajectory& y, FlowTag tag) {
  require(x.same_schedule(y), "trajectories do not share a schedule");
  Trajectory out(tag);
  for (std::size_t i = 0; i < x.size(); ++i) {
    VectorField s = a * x.at(i).to_spectral();
    s += b * y.at(i);
    s.mark_solenoidal(x.at(i).solenoidal() && y.at(i).solenoidal());
    out.append(x.time(i), std::move(s));
  }
  return out;
}

Trajectory multiply(const Trajectory& x, const ScalarField& weight) {
  Trajectory out(FlowTag::derived());
  for (std::size_t i = 0; i < x.size(); ++i)
    out.append(x.time(i), spectral::multiply(x.at(i), weight));
  return out;
}

void write_trajectory(const std::filesystem::path& path, const Trajectory& traj) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidArgument("cannot open " + path.string() + " for writing");
  for (std::size_t i = 0; i < traj.size(); ++i) {
    const VectorField f = traj.at(i).to_physical();
    out.write(kMagic, sizeof(kMagic));
    put<std::uint32_t>(out, kVersion);
    put<std::uint32_t>(out, kByteOrderMarker);
    put<std::uint32_t>(out, static_cast<std::uint32_t>(f.grid().n()));
    put<double>(out, f.grid().length());
    put<double>(out, traj.time(i));
    put<std::uint32_t>(out, static_cast<std::uint32_t>(traj.tag().kind));
    put<std::int32_t>(out, traj.tag().picard_index);
    for (int c = 0; c < 3; ++c)
      for (double v : f.physical(c)) put<double>(out, v);
  }
  if (!out) throw InvalidArgument("failed writing " + path.string());
}

Trajectory read_trajectory(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open " + path.string());
  std::optional<Trajectory> traj;
  while (in.peek() != std::char_traits<char>::eof()) {
    char magic[8];
    in.read(magic, sizeof(magic));
    if (!in || std::memcmp(magic, kMagic, sizeof(magic)) != 0)
      throw InvalidArgument("not a trajectory snapshot");
    if (get<std::uint32_t>(in) != kVersion) throw InvalidArgument("unsupported snapshot version");
    if (get<std::uint32_t>(in) != kByteOrderMarker) throw InvalidArgument("bad byte-order marker");
    const int n = static_cast<int>(get<std::uint32_t>(in));
    const double length = get<double>(in);
    const double t = get<double>(in);
    FlowTag tag;
    const auto kind = get<std::uint32_t>(in);
    require(kind <= 3, "unknown flow kind");
    tag.kind = static_cast<FlowKind>(kind);
    tag.picard_index = get<std::int32_t>(in);
    if (!traj) traj.emplace(tag);
    require(traj->tag() == tag, "mixed flow tags in one file");
    const Grid3 grid(n, length);
    VectorField::PhysicalData data;
    for (auto& c : data) {
      c.resize(grid.physical_size());
      for (double& v : c) v = get<double>(in);
    }
    VectorField f = VectorField::from_physical(grid, std::move(data)).to_spectral();
    f.mark_solenoidal(requires_solenoidal(tag.kind));
    traj->append(t, std::move(f));
  }
  require(traj.has_value(), "empty trajectory file");
  return std::move(*traj);
}

}  // namespace nslab::evolution

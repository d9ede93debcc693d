#pragma once
// Output emission: binary field snapshots, PGM heatmaps with a scaling
// sidecar, and a CSV metrics log.
//
// Binary format (little-endian regardless of host):
//   magic "FRDF" | u16 version (=1) | u16 dim | u32 size per axis |
//   float64 values in axis-0-major (C) order.
//
// PGM heatmaps are P5/maxval 255 with per-snapshot linear min-max scaling;
// a constant field maps to mid-gray 128. The scaling bounds go into a
// "<name>.txt" sidecar so frames stay quantitatively interpretable.

#include <cstddef>
#include <filesystem>
#include <string>

#include "fracrd/core.hpp"

namespace fracrd {

void write_field_binary(const std::filesystem::path& path, const Field& f);
Field read_field_binary(const std::filesystem::path& path);

// 2-D fields render with axis 0 as image width and axis 1 as height (top row
// = largest y); 1-D fields render as a height-1 strip.
void write_field_pgm(const std::filesystem::path& path, const Field& f,
                     std::size_t step, double time);

struct FieldStats {
  double min, max, mean, l2;
};
FieldStats field_stats(const Field& f, const Grid& grid);

// Appends "step,time,species,min,max,mean,l2" rows to metrics.csv and writes
// per-snapshot binary/PGM files. Matches the runner's snapshot sink contract.
class SnapshotWriter {
 public:
  SnapshotWriter(std::filesystem::path out_dir, const Grid& grid, bool quiet = false);

  void operator()(std::size_t step, double time, std::size_t species, const Field& f);

  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  Grid grid_;
  bool quiet_;
  std::vector<bool> warned_negative_;
};

// File name used for both periodic and final snapshots.
std::string snapshot_name(std::size_t species, std::size_t step);

}  // namespace fracrd

#include "fracrd/snapshot.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <stdexcept>

namespace fracrd {

namespace {

void put_u16(std::ostream& out, std::uint16_t v) {
  const char b[2] = {static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff)};
  out.write(b, 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}

void put_f64(std::ostream& out, double d) {
  const std::uint64_t v = std::bit_cast<std::uint64_t>(d);
  char b[8];
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 8);
}

std::uint16_t get_u16(std::istream& in) {
  unsigned char b[2];
  in.read(reinterpret_cast<char*>(b), 2);
  return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  in.read(reinterpret_cast<char*>(b), 4);
  std::uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

double get_f64(std::istream& in) {
  unsigned char b[8];
  in.read(reinterpret_cast<char*>(b), 8);
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return std::bit_cast<double>(v);
}

[[noreturn]] void io_fail(const std::filesystem::path& path, const std::string& what) {
  throw std::runtime_error(what + ": " + path.string());
}

}  // namespace

void write_field_binary(const std::filesystem::path& path, const Field& f) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) io_fail(path, "cannot open for writing");
  out.write("FRDF", 4);
  put_u16(out, 1);
  put_u16(out, static_cast<std::uint16_t>(f.shape.size()));
  for (std::size_t s : f.shape) put_u32(out, static_cast<std::uint32_t>(s));
  for (double v : f.values) put_f64(out, v);
  if (!out) io_fail(path, "write failed");
}

Field read_field_binary(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) io_fail(path, "cannot open for reading");
  char magic[4];
  in.read(magic, 4);
  if (!in || std::string(magic, 4) != "FRDF") io_fail(path, "not a FRDF field file");
  const std::uint16_t version = get_u16(in);
  if (version != 1) io_fail(path, "unsupported FRDF version " + std::to_string(version));
  const std::uint16_t dim = get_u16(in);
  if (dim < 1 || dim > 3) io_fail(path, "bad dimension in field file");
  Field f;
  f.shape.resize(dim);
  for (std::uint16_t a = 0; a < dim; ++a) f.shape[a] = get_u32(in);
  const std::size_t total = shape_total(f.shape);
  f.values.resize(total);
  for (std::size_t i = 0; i < total; ++i) f.values[i] = get_f64(in);
  if (!in) io_fail(path, "truncated field file");
  return f;
}

void write_field_pgm(const std::filesystem::path& path, const Field& f,
                     std::size_t step, double time) {
  if (f.shape.size() > 2)
    throw std::invalid_argument("pgm: only 1-D and 2-D fields render as heatmaps");
  const std::size_t nx = f.shape[0];
  const std::size_t ny = f.shape.size() == 2 ? f.shape[1] : 1;

  double lo = f.values[0], hi = f.values[0];
  for (double v : f.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  const bool constant = !(hi > lo);

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) io_fail(path, "cannot open for writing");
  out << "P5\n" << nx << " " << ny << "\n255\n";
  // Rows from largest y downward so the origin sits at the lower-left corner.
  for (std::size_t row = 0; row < ny; ++row) {
    const std::size_t jy = ny - 1 - row;
    for (std::size_t jx = 0; jx < nx; ++jx) {
      const double v = f.values[jx * ny + jy];
      unsigned char px = 128;
      if (!constant) {
        const double t = (v - lo) / (hi - lo);
        px = static_cast<unsigned char>(std::lround(255.0 * std::min(1.0, std::max(0.0, t))));
      }
      out.put(static_cast<char>(px));
    }
  }
  if (!out) io_fail(path, "write failed");

  std::filesystem::path sidecar = path;
  sidecar += ".txt";
  std::ofstream side(sidecar, std::ios::trunc);
  if (!side) io_fail(sidecar, "cannot open for writing");
  char buf[160];
  std::snprintf(buf, sizeof buf, "step %zu\ntime %.17g\nmin %.17g\nmax %.17g\n",
                step, time, lo, hi);
  side << buf;
}

FieldStats field_stats(const Field& f, const Grid& grid) {
  FieldStats st{f.values[0], f.values[0], 0.0, 0.0};
  double sum = 0.0, sum2 = 0.0;
  for (double v : f.values) {
    st.min = std::min(st.min, v);
    st.max = std::max(st.max, v);
    sum += v;
    sum2 += v * v;
  }
  st.mean = sum / static_cast<double>(f.size());
  st.l2 = std::sqrt(grid.cell_volume() * sum2);
  return st;
}

std::string snapshot_name(std::size_t species, std::size_t step) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "field_s%zu_k%08zu", species + 1, step);
  return buf;
}

SnapshotWriter::SnapshotWriter(std::filesystem::path out_dir, const Grid& grid, bool quiet)
    : dir_(std::move(out_dir)), grid_(grid), quiet_(quiet) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec) io_fail(dir_, "cannot create output directory");
  // Fresh header per run.
  std::ofstream csv(dir_ / "metrics.csv", std::ios::trunc);
  if (!csv) io_fail(dir_ / "metrics.csv", "cannot open for writing");
  csv << "step,time,species,min,max,mean,l2\n";
}

void SnapshotWriter::operator()(std::size_t step, double time, std::size_t species,
                                const Field& f) {
  const std::string base = snapshot_name(species, step);
  write_field_binary(dir_ / (base + ".bin"), f);
  if (f.shape.size() <= 2) write_field_pgm(dir_ / (base + ".pgm"), f, step, time);

  const FieldStats st = field_stats(f, grid_);
  std::ofstream csv(dir_ / "metrics.csv", std::ios::app);
  if (!csv) io_fail(dir_ / "metrics.csv", "cannot open for appending");
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu,%.17g,%zu,%.17g,%.17g,%.17g,%.17g\n", step, time,
                species + 1, st.min, st.max, st.mean, st.l2);
  csv << buf;

  if (warned_negative_.size() <= species) warned_negative_.resize(species + 1, false);
  if (st.min < 0.0 && !warned_negative_[species] && !quiet_) {
    std::cerr << "warning: species " << species + 1 << " density went negative (min = "
              << st.min << ") at step " << step << "\n";
    warned_negative_[species] = true;
  }
}

}  // namespace fracrd

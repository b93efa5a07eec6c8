#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "omt/field.hpp"
#include "omt/graph.hpp"
#include "omt/lindblad.hpp"
#include "omt/pdhg.hpp"
#include "omt/problems.hpp"

namespace omt::io {

/// Version tag written into every JSON artifact.
inline constexpr int kFormatVersion = 1;

// OMTF: "OMTF1", little-endian u32 {kind, n, k}, then float64 values pixel by
// pixel in row-major order. Matrix kinds store the full k x k matrix of each
// pixel row-major; the complex kind interleaves (re, im).
enum class OmtfKind : std::uint32_t {
  Scalar = 0,
  Vector = 1,
  MatrixReal = 2,
  MatrixComplex = 3,
};

struct OmtfData {
  OmtfKind kind = OmtfKind::Scalar;
  int n = 0;
  int k = 1;
  std::vector<double> values;

  std::size_t values_per_pixel() const;
};

OmtfData read_omtf(const std::string& path);
void write_omtf(const std::string& path, const OmtfData& data);

// Field <-> OMTF. Matrix coordinates are expanded to dense matrices; the real
// kind is written when every imaginary part is exactly zero.
OmtfData omtf_from_scalar(const Field& f);
OmtfData omtf_from_vector(const Field& f);
OmtfData omtf_from_coords(const Field& coords, int k, bool skew);
Field field_from_omtf(const OmtfData& data);
/// Hermitian coordinates of a matrix-kind OMTF; rejects non-Hermitian pixels.
Field coords_from_omtf(const OmtfData& data);

/// n rows of n comma-separated values.
Field read_scalar_csv(const std::string& path);
void write_scalar_csv(const std::string& path, const Field& f);

// Densities from .csv (scalar only) or OMTF. With `normalize` the mass is
// rescaled to one, otherwise it must already be one within 1e-9.
ScalarDensity load_scalar(const std::string& path, bool normalize = false);
VectorDensity load_vector(const std::string& path, bool normalize = false);
MatrixDensity load_matrix(const std::string& path, bool normalize = false);

// {"format_version", "k", "edges": [[i, j], ...] 1-based, "costs": [...]}
TransportGraph load_graph(const std::string& path);
void save_graph(const std::string& path, const TransportGraph& g);

// {"format_version", "k", "ell", "matrices": [[[re, im], ...], ...]}, each
// matrix k*k entries row-major.
LindbladSet load_lindblad(const std::string& path);
void save_lindblad(const std::string& path, const LindbladSet& ls);

// Scene files drive `omt gen`:
//   {"format_version", "kind": "disks", "n", "channels", "disks": [...]}
//   {"format_version", "kind": "blobs", "n", "blobs": [...]}
//   {"format_version", "kind": "gaussians", "n", "bumps": [...]}
struct Scene {
  std::string kind;
  int n = 0;
  int channels = 3;
  std::vector<DiskSpec> disks;
  std::vector<BlobSpec> blobs;
  std::vector<GaussianSpec> bumps;
};

Scene load_scene(const std::string& path);
/// Rasterizes the scene and writes it as OMTF.
void write_scene_field(const Scene& scene, const std::string& path);

/// Columns i, j, x, y, then ux_c, uy_c for every payload component c.
void write_quiver_csv(const std::string& path, const GridSpec& grid,
                      const FluxField& u);

std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

}  // namespace omt::io

#include "omt/io.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "json.hpp"
#include "omt/error.hpp"

namespace omt::io {

using nlohmann::json;

static_assert(std::endian::native == std::endian::little,
              "OMTF I/O assumes a little-endian host");

namespace {

constexpr char kMagic[5] = {'O', 'M', 'T', 'F', '1'};

std::ifstream open_in(const std::string& path, bool binary) {
  std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
  require(in.good(), ErrorKind::Io, "cannot open '" + path + "'");
  return in;
}

std::ofstream open_out(const std::string& path, bool binary) {
  std::ofstream out(path, binary ? std::ios::binary | std::ios::trunc
                                 : std::ios::trunc);
  require(out.good(), ErrorKind::Io, "cannot write '" + path + "'");
  return out;
}

json parse_json(const std::string& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::exception& e) {
    fail(ErrorKind::Io, "'" + path + "': " + e.what());
  }
}

template <class T>
T get(const json& j, const char* key, const std::string& path) {
  require(j.contains(key), ErrorKind::Io,
          "'" + path + "': missing key '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    fail(ErrorKind::Io, "'" + path + "': bad value for '" + key + "'");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback, const std::string& path) {
  return j.contains(key) ? get<T>(j, key, path) : fallback;
}

void check_version(const json& j, const std::string& path) {
  if (!j.contains("format_version")) return;
  require(get<int>(j, "format_version", path) == kFormatVersion, ErrorKind::Io,
          "'" + path + "': unsupported format_version");
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

CMatrix matrix_from_json(const json& m, int k, const std::string& path) {
  require(m.is_array() && static_cast<int>(m.size()) == k * k, ErrorKind::Io,
          "'" + path + "': matrix needs k*k entries");
  CMatrix out(k, k);
  for (int r = 0; r < k; ++r)
    for (int c = 0; c < k; ++c) {
      const json& e = m[r * k + c];
      if (e.is_number()) {
        out(r, c) = e.get<double>();
      } else {
        require(e.is_array() && e.size() == 2, ErrorKind::Io,
                "'" + path + "': entries are numbers or [re, im] pairs");
        out(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
      }
    }
  return out;
}

json matrix_to_json(const CMatrix& m) {
  json out = json::array();
  for (int r = 0; r < m.rows(); ++r)
    for (int c = 0; c < m.cols(); ++c)
      out.push_back({m(r, c).real(), m(r, c).imag()});
  return out;
}

double read_finite(const std::string& token, const std::string& path) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(token, &used);
  } catch (const std::exception&) {
    fail(ErrorKind::Io, "'" + path + "': not a number: '" + token + "'");
  }
  while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used])))
    ++used;
  require(used == token.size() && std::isfinite(v), ErrorKind::Io,
          "'" + path + "': not a finite number: '" + token + "'");
  return v;
}

}  // namespace

std::size_t OmtfData::values_per_pixel() const {
  switch (kind) {
    case OmtfKind::Scalar: return 1;
    case OmtfKind::Vector: return static_cast<std::size_t>(k);
    case OmtfKind::MatrixReal: return static_cast<std::size_t>(k) * k;
    case OmtfKind::MatrixComplex: return 2 * static_cast<std::size_t>(k) * k;
  }
  return 0;
}

OmtfData read_omtf(const std::string& path) {
  auto in = open_in(path, true);
  char magic[5];
  in.read(magic, 5);
  require(in.good() && std::memcmp(magic, kMagic, 5) == 0, ErrorKind::Io,
          "'" + path + "' is not an OMTF file");
  std::uint32_t head[3];
  in.read(reinterpret_cast<char*>(head), sizeof head);
  require(in.good(), ErrorKind::Io, "'" + path + "': truncated header");
  require(head[0] <= 3, ErrorKind::Io, "'" + path + "': unknown field kind");
  require(head[1] >= 2 && head[1] <= 1u << 14 && head[2] >= 1 &&
              head[2] <= 1u << 10,
          ErrorKind::Io, "'" + path + "': implausible dimensions");
  OmtfData d;
  d.kind = static_cast<OmtfKind>(head[0]);
  d.n = static_cast<int>(head[1]);
  d.k = static_cast<int>(head[2]);
  require(d.kind != OmtfKind::Scalar || d.k == 1, ErrorKind::Io,
          "'" + path + "': scalar field with k != 1");
  d.values.resize(static_cast<std::size_t>(d.n) * d.n * d.values_per_pixel());
  in.read(reinterpret_cast<char*>(d.values.data()),
          static_cast<std::streamsize>(d.values.size() * sizeof(double)));
  require(in.gcount() == static_cast<std::streamsize>(d.values.size() *
                                                      sizeof(double)),
          ErrorKind::Io, "'" + path + "': truncated payload");
  in.peek();
  require(in.eof(), ErrorKind::Io, "'" + path + "': trailing bytes");
  for (double v : d.values)
    require(std::isfinite(v), ErrorKind::Io,
            "'" + path + "': non-finite value");
  return d;
}

void write_omtf(const std::string& path, const OmtfData& d) {
  require(d.values.size() ==
              static_cast<std::size_t>(d.n) * d.n * d.values_per_pixel(),
          ErrorKind::DimensionMismatch, "OMTF payload size mismatch");
  auto out = open_out(path, true);
  out.write(kMagic, 5);
  const std::uint32_t head[3] = {static_cast<std::uint32_t>(d.kind),
                                 static_cast<std::uint32_t>(d.n),
                                 static_cast<std::uint32_t>(d.k)};
  out.write(reinterpret_cast<const char*>(head), sizeof head);
  out.write(reinterpret_cast<const char*>(d.values.data()),
            static_cast<std::streamsize>(d.values.size() * sizeof(double)));
  require(out.good(), ErrorKind::Io, "failed writing '" + path + "'");
}

OmtfData omtf_from_scalar(const Field& f) {
  require(f.components() == 1, ErrorKind::DimensionMismatch,
          "scalar field expected");
  OmtfData d{OmtfKind::Scalar, f.n(), 1, {}};
  d.values.assign(f.data().begin(), f.data().end());
  return d;
}

OmtfData omtf_from_vector(const Field& f) {
  OmtfData d{OmtfKind::Vector, f.n(), f.components(), {}};
  d.values.reserve(f.data().size());
  for (int i = 0; i < f.n(); ++i)
    for (int j = 0; j < f.n(); ++j)
      for (int c = 0; c < f.components(); ++c) d.values.push_back(f.at(c, i, j));
  return d;
}

OmtfData omtf_from_coords(const Field& coords, int k, bool skew) {
  require(coords.components() == k * k, ErrorKind::DimensionMismatch,
          "coordinate field does not hold k x k matrices");
  const int n = coords.n();
  std::vector<CMatrix> mats;
  mats.reserve(static_cast<std::size_t>(n) * n);
  bool real = true;
  std::vector<double> c(k * k);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int p = 0; p < k * k; ++p) c[p] = coords.at(p, i, j);
      mats.push_back(dense_from_coords(c, k, skew));
      real = real && mats.back().imag().isZero(0.0);
    }
  OmtfData d{real ? OmtfKind::MatrixReal : OmtfKind::MatrixComplex, n, k, {}};
  for (const auto& m : mats)
    for (int r = 0; r < k; ++r)
      for (int s = 0; s < k; ++s) {
        d.values.push_back(m(r, s).real());
        if (!real) d.values.push_back(m(r, s).imag());
      }
  return d;
}

Field field_from_omtf(const OmtfData& d) {
  require(d.kind == OmtfKind::Scalar || d.kind == OmtfKind::Vector,
          ErrorKind::InvalidArgument, "expected a scalar or vector field");
  Field f(d.n, d.k);
  std::size_t t = 0;
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j)
      for (int c = 0; c < d.k; ++c) f.at(c, i, j) = d.values[t++];
  return f;
}

Field coords_from_omtf(const OmtfData& d) {
  require(d.kind == OmtfKind::MatrixReal || d.kind == OmtfKind::MatrixComplex,
          ErrorKind::InvalidArgument, "expected a matrix field");
  const int k = d.k;
  require(k <= PayloadShape::kMaxMatrixDim, ErrorKind::InvalidArgument,
          "matrix fields are limited to k <= 8");
  const bool cplx = d.kind == OmtfKind::MatrixComplex;
  Field f(d.n, k * k);
  std::vector<double> c(k * k);
  std::size_t t = 0;
  CMatrix m(k, k);
  for (int i = 0; i < d.n; ++i)
    for (int j = 0; j < d.n; ++j) {
      for (int r = 0; r < k; ++r)
        for (int s = 0; s < k; ++s) {
          const double re = d.values[t++];
          const double im = cplx ? d.values[t++] : 0.0;
          m(r, s) = Complex(re, im);
        }
      const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
      HermitianMatrix::from_dense(m, 1e-9 * scale).to_coords(c);
      for (int p = 0; p < k * k; ++p) f.at(p, i, j) = c[p];
    }
  return f;
}

Field read_scalar_csv(const std::string& path) {
  auto in = open_in(path, false);
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string tok;
    while (std::getline(ss, tok, ',')) row.push_back(read_finite(tok, path));
    rows.push_back(std::move(row));
  }
  const int n = static_cast<int>(rows.size());
  require(n >= 2, ErrorKind::Io, "'" + path + "': need at least 2 rows");
  Field f(n, 1);
  for (int i = 0; i < n; ++i) {
    require(static_cast<int>(rows[i].size()) == n, ErrorKind::Io,
            "'" + path + "': expected " + std::to_string(n) +
                " values per row");
    for (int j = 0; j < n; ++j) f.at(0, i, j) = rows[i][j];
  }
  return f;
}

void write_scalar_csv(const std::string& path, const Field& f) {
  require(f.components() == 1, ErrorKind::DimensionMismatch,
          "scalar field expected");
  std::ostringstream os;
  os << std::setprecision(17);
  for (int i = 0; i < f.n(); ++i) {
    for (int j = 0; j < f.n(); ++j) os << (j ? "," : "") << f.at(0, i, j);
    os << '\n';
  }
  write_text(path, os.str());
}

ScalarDensity load_scalar(const std::string& path, bool normalize) {
  Field f;
  if (ends_with(path, ".csv")) {
    f = read_scalar_csv(path);
  } else {
    const OmtfData d = read_omtf(path);
    require(d.kind == OmtfKind::Scalar, ErrorKind::InvalidArgument,
            "'" + path + "' does not hold a scalar field");
    f = field_from_omtf(d);
  }
  return normalize ? ScalarDensity::normalized(std::move(f))
                   : ScalarDensity::from_field(std::move(f), 1e-9);
}

VectorDensity load_vector(const std::string& path, bool normalize) {
  const OmtfData d = read_omtf(path);
  require(d.kind == OmtfKind::Vector || d.kind == OmtfKind::Scalar,
          ErrorKind::InvalidArgument,
          "'" + path + "' does not hold a vector field");
  Field f = field_from_omtf(d);
  return normalize ? VectorDensity::normalized(std::move(f))
                   : VectorDensity::from_field(std::move(f), 1e-9);
}

MatrixDensity load_matrix(const std::string& path, bool normalize) {
  const OmtfData d = read_omtf(path);
  Field f = coords_from_omtf(d);
  return normalize ? MatrixDensity::normalized(std::move(f), d.k)
                   : MatrixDensity::from_coords(std::move(f), d.k, 1e-9);
}

TransportGraph load_graph(const std::string& path) {
  const json j = parse_json(path);
  check_version(j, path);
  const int k = get<int>(j, "k", path);
  const auto edges = get<std::vector<std::vector<int>>>(j, "edges", path);
  auto costs = get_or<std::vector<double>>(
      j, "costs", std::vector<double>(edges.size(), 1.0), path);
  require(costs.size() == edges.size(), ErrorKind::Io,
          "'" + path + "': one cost per edge required");
  std::vector<std::pair<int, int>> list;
  for (const auto& e : edges) {
    require(e.size() == 2, ErrorKind::Io, "'" + path + "': edges are pairs");
    list.emplace_back(e[0] - 1, e[1] - 1);
  }
  return TransportGraph(k, std::move(list), std::move(costs));
}

void save_graph(const std::string& path, const TransportGraph& g) {
  json j;
  j["format_version"] = kFormatVersion;
  j["k"] = g.nodes();
  j["edges"] = json::array();
  for (auto [a, b] : g.edge_list()) j["edges"].push_back({a + 1, b + 1});
  j["costs"] = g.costs();
  write_text(path, j.dump(2) + "\n");
}

LindbladSet load_lindblad(const std::string& path) {
  const json j = parse_json(path);
  check_version(j, path);
  const int k = get<int>(j, "k", path);
  const json mats = get<json>(j, "matrices", path);
  require(mats.is_array() && !mats.empty(), ErrorKind::Io,
          "'" + path + "': 'matrices' must be a non-empty list");
  if (j.contains("ell"))
    require(get<int>(j, "ell", path) == static_cast<int>(mats.size()),
            ErrorKind::Io, "'" + path + "': 'ell' disagrees with 'matrices'");
  require(k >= 1 && k <= PayloadShape::kMaxMatrixDim, ErrorKind::InvalidArgument,
          "'" + path + "': k must lie in [1, 8]");
  std::vector<HermitianMatrix> ls;
  for (const auto& m : mats)
    ls.push_back(HermitianMatrix::from_dense(matrix_from_json(m, k, path), 1e-12));
  return LindbladSet(std::move(ls));
}

void save_lindblad(const std::string& path, const LindbladSet& ls) {
  json j;
  j["format_version"] = kFormatVersion;
  j["k"] = ls.dim();
  j["ell"] = ls.size();
  j["matrices"] = json::array();
  for (const auto& m : ls.matrices()) j["matrices"].push_back(matrix_to_json(m.dense()));
  write_text(path, j.dump(2) + "\n");
}

Scene load_scene(const std::string& path) {
  const json j = parse_json(path);
  check_version(j, path);
  Scene s;
  s.kind = get<std::string>(j, "kind", path);
  s.n = get<int>(j, "n", path);
  if (s.kind == "disks") {
    s.channels = get_or<int>(j, "channels", 3, path);
    for (const auto& d : get<json>(j, "disks", path))
      s.disks.push_back({get<double>(d, "x", path), get<double>(d, "y", path),
                         get<double>(d, "radius", path),
                         get<int>(d, "channel", path),
                         get_or<double>(d, "mass", 1.0, path)});
  } else if (s.kind == "blobs") {
    for (const auto& b : get<json>(j, "blobs", path)) {
      const json m = get<json>(b, "matrix", path);
      const int k = static_cast<int>(std::lround(std::sqrt(m.size())));
      require(k >= 1 && k <= PayloadShape::kMaxMatrixDim, ErrorKind::Io,
              "'" + path + "': blob matrix must be k*k with k in [1, 8]");
      s.blobs.push_back(
          {get<double>(b, "x", path), get<double>(b, "y", path),
           get<double>(b, "radius", path),
           HermitianMatrix::from_dense(matrix_from_json(m, k, path), 1e-12),
           get_or<double>(b, "mass", 1.0, path)});
    }
  } else if (s.kind == "gaussians") {
    for (const auto& g : get<json>(j, "bumps", path))
      s.bumps.push_back({get<double>(g, "x", path), get<double>(g, "y", path),
                         get<double>(g, "width", path),
                         get_or<double>(g, "weight", 1.0, path),
                         get_or<double>(g, "cutoff", 3.0, path)});
  } else {
    fail(ErrorKind::Io, "'" + path + "': unknown scene kind '" + s.kind +
                            "' (expected disks, blobs or gaussians)");
  }
  return s;
}

void write_scene_field(const Scene& scene, const std::string& path) {
  if (scene.kind == "disks") {
    write_omtf(path, omtf_from_vector(
                         gen_rgb_disks(scene.disks, scene.n, scene.channels)
                             .values()));
  } else if (scene.kind == "blobs") {
    const MatrixDensity m = gen_matrix_blobs(scene.blobs, scene.n);
    write_omtf(path, omtf_from_coords(m.coords(), m.dim(), false));
  } else {
    write_omtf(path, omtf_from_scalar(
                         gen_scalar_gaussians(scene.bumps, scene.n).values()));
  }
}

void write_quiver_csv(const std::string& path, const GridSpec& grid,
                      const FluxField& u) {
  std::ostringstream os;
  os << std::setprecision(17) << "i,j,x,y";
  for (int c = 0; c < u.components(); ++c) os << ",ux_" << c << ",uy_" << c;
  os << '\n';
  for (int i = 0; i < grid.n; ++i)
    for (int j = 0; j < grid.n; ++j) {
      os << i << ',' << j << ',' << grid.coord(i) << ',' << grid.coord(j);
      for (int c = 0; c < u.components(); ++c)
        os << ',' << u.ux.at(c, i, j) << ',' << u.uy.at(c, i, j);
      os << '\n';
    }
  write_text(path, os.str());
}

std::string read_text(const std::string& path) {
  auto in = open_in(path, false);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::string& path, const std::string& text) {
  auto out = open_out(path, false);
  out << text;
  require(out.good(), ErrorKind::Io, "failed writing '" + path + "'");
}

}  // namespace omt::io

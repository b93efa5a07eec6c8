#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <random>

#include "omt/error.hpp"
#include "omt/io.hpp"

using namespace omt;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() /
           ("omt_io_test_" + std::to_string(std::random_device{}()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

}  // namespace

TEST_CASE("omtf round trips") {
  TempDir tmp;
  const auto s = random_scalar_density(5, 1);
  io::write_omtf(tmp.file("s.omtf"), io::omtf_from_scalar(s.values()));
  CHECK(io::load_scalar(tmp.file("s.omtf")).values() == s.values());

  const auto v = random_vector_density(4, 3, 2);
  io::write_omtf(tmp.file("v.omtf"), io::omtf_from_vector(v.values()));
  CHECK(io::load_vector(tmp.file("v.omtf")).values() == v.values());

  const auto m = random_matrix_density(4, 3, 3);
  const auto data = io::omtf_from_coords(m.coords(), 3, false);
  CHECK(data.kind == io::OmtfKind::MatrixComplex);
  io::write_omtf(tmp.file("m.omtf"), data);
  const auto back = io::load_matrix(tmp.file("m.omtf"));
  for (std::size_t i = 0; i < m.coords().data().size(); ++i)
    CHECK(back.coords().data()[i] == doctest::Approx(m.coords().data()[i]).epsilon(1e-14));

  // Real matrices are written with the real kind.
  const auto real = io::omtf_from_coords(
      gen_matrix_blobs(presets::dti_lambda0(), 8).coords(), 3, false);
  CHECK(real.kind == io::OmtfKind::MatrixReal);
}

TEST_CASE("omtf rejects damaged files") {
  TempDir tmp;
  io::write_omtf(tmp.file("a.omtf"), io::omtf_from_scalar(Field(3, 1, 1.0 / 9.0)));
  const std::string bytes = io::read_text(tmp.file("a.omtf"));

  auto expect_io_error = [&](const std::string& content) {
    io::write_text(tmp.file("b.omtf"), content);
    try {
      io::read_omtf(tmp.file("b.omtf"));
      FAIL("expected an error");
    } catch (const Error& e) {
      CHECK(e.kind() != ErrorKind::Numerical);
    }
  };
  expect_io_error(bytes.substr(0, bytes.size() - 3));
  expect_io_error(bytes + "x");
  expect_io_error("OMTF2" + bytes.substr(5));
  CHECK_THROWS_AS(io::read_omtf(tmp.file("missing.omtf")), Error);

  // Mass must be one unless normalization is requested.
  io::write_omtf(tmp.file("c.omtf"), io::omtf_from_scalar(Field(3, 1, 1.0)));
  CHECK_THROWS_AS(io::load_scalar(tmp.file("c.omtf")), Error);
  CHECK(total_mass(io::load_scalar(tmp.file("c.omtf"), true)) == doctest::Approx(1.0));
}

TEST_CASE("csv densities") {
  TempDir tmp;
  const auto s = random_scalar_density(4, 9);
  io::write_scalar_csv(tmp.file("s.csv"), s.values());
  const Field f = io::read_scalar_csv(tmp.file("s.csv"));
  for (std::size_t i = 0; i < f.data().size(); ++i)
    CHECK(f.data()[i] == doctest::Approx(s.values().data()[i]).epsilon(1e-15));
  io::write_text(tmp.file("bad.csv"), "1,2\n3\n");
  CHECK_THROWS_AS(io::read_scalar_csv(tmp.file("bad.csv")), Error);
}

TEST_CASE("graph and lindblad json") {
  TempDir tmp;
  const TransportGraph g(4, {{0, 1}, {1, 2}, {2, 3}}, {1.0, 2.5, 0.5});
  io::save_graph(tmp.file("g.json"), g);
  const auto g2 = io::load_graph(tmp.file("g.json"));
  CHECK(g2.edge_list() == g.edge_list());
  CHECK(g2.costs() == g.costs());

  io::write_text(tmp.file("h.json"),
                 R"({"format_version": 1, "k": 3, "edges": [[1, 2], [1, 3], [2, 3]]})");
  const auto tri = io::load_graph(tmp.file("h.json"));
  CHECK(tri.costs() == std::vector{1.0, 1.0, 1.0});
  io::write_text(tmp.file("bad.json"), R"({"format_version": 1, "k": 2, "edges": [[1, 1]]})");
  CHECK_THROWS_AS(io::load_graph(tmp.file("bad.json")), Error);

  const auto ls = LindbladSet::dti_pair();
  io::save_lindblad(tmp.file("l.json"), ls);
  const auto ls2 = io::load_lindblad(tmp.file("l.json"));
  REQUIRE(ls2.size() == 2);
  for (int s = 0; s < 2; ++s)
    CHECK((ls2.matrices()[s].dense() - ls.matrices()[s].dense()).norm() == 0.0);
}

TEST_CASE("scenes and quiver output") {
  TempDir tmp;
  io::write_text(tmp.file("scene.json"), R"({
    "format_version": 1, "kind": "disks", "n": 16, "channels": 3,
    "disks": [{"x": 0.3, "y": 0.3, "radius": 0.2, "channel": 1, "mass": 1.0}]
  })");
  const auto scene = io::load_scene(tmp.file("scene.json"));
  io::write_scene_field(scene, tmp.file("scene.omtf"));
  const auto v = io::load_vector(tmp.file("scene.omtf"));
  CHECK(v.channels() == 3);
  CHECK(total_mass(v) == doctest::Approx(1.0));

  FluxField u(3, 2);
  u.ux.at(1, 0, 2) = 0.5;
  io::write_quiver_csv(tmp.file("q.csv"), GridSpec(3), u);
  std::ifstream in(tmp.file("q.csv"));
  std::string header, line;
  std::getline(in, header);
  CHECK(header == "i,j,x,y,ux_0,uy_0,ux_1,uy_1");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 9);
}

// Copyright 2026 The mpi_engine Authors.
// SPDX-License-Identifier: Apache-2.0

#include <catch2/catch_amalgamated.hpp>

#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "mpi_engine/cli.hpp"
#include "mpie/raster_io.hpp"
#include "mpie/render.hpp"
#include "mpie/scene_io.hpp"
#include "support/fixtures.hpp"
#include "support/temp_dir.hpp"

using namespace mpie;
using mpie::testing::TempDir;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

bool same_tree(const fs::path& a, const fs::path& b) {
  std::vector<fs::path> fa, fb;
  for (const auto& e : fs::recursive_directory_iterator(a)) fa.push_back(fs::relative(e.path(), a));
  for (const auto& e : fs::recursive_directory_iterator(b)) fb.push_back(fs::relative(e.path(), b));
  std::sort(fa.begin(), fa.end());
  std::sort(fb.begin(), fb.end());
  if (fa != fb) return false;
  for (const auto& rel : fa)
    if (fs::is_regular_file(a / rel) && slurp(a / rel) != slurp(b / rel)) return false;
  return true;
}

std::string synth_fixture(const TempDir& dir) {
  write_file(dir / "spec.json", R"({"seed": 3, "num_labels": 4,
    "primitives": [{"kind": "box", "label": 1, "depth": 8, "rect": [10, 14, 24, 20]},
                   {"kind": "pole", "label": 2, "depth": 5, "rect": [40, 6, 3, 36]}],
    "random_primitives": 2, "lateral": [0.54, -0.54]})");
  const std::string scene = (dir / "scene").string();
  REQUIRE(call({"synth", "--spec", (dir / "spec.json").string(), "--out", scene}).code == 0);
  return scene;
}

// One fronto-parallel plane at distance d carrying a one-channel image.
std::string single_plane_fixture(const TempDir& dir, const std::string& name, double d, const Raster& img,
                                 double f = 100) {
  const auto k = CameraIntrinsics::centered(f, img.width(), img.height());
  const MpiScene s{{Plane::fronto_parallel(d)}, {img}, {Raster(img.width(), img.height(), 1, 1.0f)}, k,
                   ChannelKind::Features};
  save_scene(s, dir / name);
  return (dir / name).string();
}

}  // namespace

TEST_CASE("cli planes", "[cli]") {
  const Result r = call({"planes", "--near", "1", "--far", "100", "--m", "32", "--out", "-"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto expected = plane_set(1, 100, 32);
  REQUIRE(j.size() == 32);
  for (std::size_t i = 0; i < 32; ++i) CHECK(j[i].at("distance").get<double>() == expected[i].distance());
  CHECK(call({"planes", "--near", "5", "--far", "2"}).code == cli::kValidation);
}

TEST_CASE("cli render", "[cli]") {
  TempDir dir("cli_render");
  SECTION("identity pose equals the direct composite") {
    const std::string scene = synth_fixture(dir);
    REQUIRE(call({"render", "--scene", scene, "--out", (dir / "id.raw").string(), "--labels",
                  (dir / "id.png").string()})
                .code == 0);
    const MpiScene mpi = as_mpi(load_scene(scene));
    const CompositeOutput direct = composite(mpi.content, mpi.alpha);
    CHECK(read_raw(dir / "id.raw").bitwise_equal(direct.image));
    CHECK(read_pfm(dir / "id_transmittance.pfm").bitwise_equal(direct.transmittance));
    CHECK(read_label_png(dir / "id.png") == argmax_labels(direct.image));
  }
  SECTION("lateral pose shifts a single plane by the disparity") {
    Raster img(120, 20, 1);
    img.at(80, 10) = 1.0f;
    const std::string scene = single_plane_fixture(dir, "one", 2.0, img);
    REQUIRE(call({"render", "--scene", scene, "--lateral", "0.54", "--out", (dir / "l.pfm").string()}).code == 0);
    const Raster out = read_pfm(dir / "l.pfm");
    CHECK(out.at(53, 10) == Catch::Approx(1.0f).margin(1e-5));  // 100 * 0.54 / 2 = 27 px
    CHECK(out.at(80, 10) == 0.0f);
  }
  SECTION("missing scene: exit 2, nothing written") {
    const Result r = call({"render", "--scene", (dir / "nope").string(), "--out", (dir / "x.pfm").string()});
    CHECK(r.code == cli::kValidation);
    CHECK_FALSE(fs::exists(dir / "x.pfm"));
    CHECK_FALSE(fs::exists(dir / "x_transmittance.pfm"));
  }
  SECTION("degenerate homography: exit 3 naming the plane") {
    testing::Rng rng(1);
    MpiScene s = testing::random_mpi(rng, 8, 8, 3, 1);
    s.planes = plane_set(1, 3, 3);
    save_scene(s, dir / "deg");
    const Result r = call({"render", "--scene", (dir / "deg").string(), "--forward", "1.5", "--out",
                           (dir / "x.pfm").string()});
    CHECK(r.code == cli::kGeometry);
    CHECK_THAT(r.err, Catch::Matchers::ContainsSubstring("plane 1"));
    CHECK(std::distance(fs::directory_iterator(dir.path()), fs::directory_iterator()) == 1);
  }
  SECTION("argument errors") {
    const std::string scene = synth_fixture(dir);
    CHECK(call({"render", "--scene", scene, "--lateral", "1", "--forward", "1", "--out", "x.raw"}).code ==
          cli::kValidation);
    CHECK(call({"render", "--scene", scene, "--pose-inline", "{bad", "--out", (dir / "x.raw").string()}).code ==
          cli::kValidation);
    CHECK(call({"render", "--scene", scene, "--out", (dir / "x.tif").string()}).code == cli::kValidation);
    CHECK(call({"render", "--scene", scene, "--out", (dir / "x.pfm").string()}).code == cli::kValidation);
    CHECK(call({"render", "--scene", scene, "--pose", (dir / "missing.json").string(), "--out",
                (dir / "x.raw").string()})
              .code == cli::kIo);
    CHECK(call({"bogus"}).code == cli::kValidation);
    CHECK(call({"--help"}).code == cli::kOk);
  }
}

TEST_CASE("cli depth", "[cli]") {
  TempDir dir("cli_depth");
  SECTION("opaque single plane") {
    const std::string scene = single_plane_fixture(dir, "p54", 54.0, Raster(6, 4, 1, 0.5f));
    REQUIRE(call({"depth", "--scene", scene, "--out", (dir / "z.pfm").string()}).code == 0);
    const Raster z = read_pfm(dir / "z.pfm");
    for (float v : z.data()) CHECK(v == 54.0f);
    REQUIRE(call({"depth", "--scene", scene, "--disparity", "--fx", "100", "--out", (dir / "disp.pfm").string()})
                .code == 0);
    const Raster disp = read_pfm(dir / "disp.pfm");
    for (float v : disp.data()) CHECK(v == Catch::Approx(1.0f).epsilon(1e-6));
  }
  SECTION("inverse depth of a two-plane stack") {
    const auto k = CameraIntrinsics::centered(50, 2, 1);
    const MpiScene s{{Plane::fronto_parallel(2), Plane::fronto_parallel(10)},
                     {Raster(2, 1, 1), Raster(2, 1, 1)},
                     {Raster(2, 1, 1, std::vector<float>{0.5f, 0.0f}), Raster(2, 1, 1, std::vector<float>{1.0f, 1.0f})},
                     k,
                     ChannelKind::Features};
    save_scene(s, dir / "two");
    REQUIRE(call({"depth", "--scene", (dir / "two").string(), "--inverse", "--out", (dir / "inv.pfm").string()})
                .code == 0);
    const Raster inv = read_pfm(dir / "inv.pfm");
    CHECK(inv.at(0, 0) == Catch::Approx(0.3).epsilon(1e-6));  // 0.5/2 + 0.5/10
    CHECK(inv.at(1, 0) == Catch::Approx(0.1).epsilon(1e-6));
  }
}

TEST_CASE("cli expand, edit and metrics", "[cli]") {
  TempDir dir("cli_misc");
  const std::string scene = synth_fixture(dir);

  SECTION("expand matches the library") {
    REQUIRE(call({"expand", "--scene", scene, "--out", (dir / "full").string()}).code == 0);
    const MpiScene a = as_mpi(load_scene(dir / "full"));
    const MpiScene b = as_mpi(load_scene(scene));
    for (std::size_t i = 0; i < a.num_planes(); ++i) CHECK(a.content[i].bitwise_equal(b.content[i]));
  }
  SECTION("empty edit script leaves the scene bitwise unchanged") {
    write_file(dir / "empty.json", R"({"ops": []})");
    REQUIRE(call({"edit", "--scene", scene, "--script", (dir / "empty.json").string(), "--out",
                  (dir / "edited").string()})
                .code == 0);
    for (const auto& e : fs::directory_iterator(dir / "edited")) {
      if (!e.is_regular_file()) continue;
      CHECK(slurp(e.path()) == slurp(fs::path(scene) / e.path().filename()));
    }
  }
  SECTION("invalid edit leaves the destination untouched") {
    write_file(dir / "bad.json", R"({"ops": [{"layer": 9, "action": "set_label", "label": 0}]})");
    CHECK(call({"edit", "--scene", scene, "--script", (dir / "bad.json").string(), "--out",
                (dir / "edited").string()})
              .code == cli::kValidation);
    CHECK_FALSE(fs::exists(dir / "edited"));
  }
  SECTION("refuses to replace a directory that is not a scene") {
    fs::create_directories(dir / "keep");
    write_file(dir / "keep" / "notes.txt", "x");
    CHECK(call({"expand", "--scene", scene, "--out", (dir / "keep").string()}).code == cli::kValidation);
    CHECK(fs::exists(dir / "keep" / "notes.txt"));
  }
  SECTION("metrics on identical label maps") {
    const std::string gt = (fs::path(scene) / "gt" / "labels_00.png").string();
    const Result r = call({"metrics", "--pred", gt, "--gt", gt, "--kind", "sem"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j.at("records")[1].at("metric") == "mean_iou");
    CHECK(j.at("records")[1].at("value") == 100.0);
  }
  SECTION("depth and photometric metrics") {
    const std::string z = (fs::path(scene) / "gt" / "depth_00.pfm").string();
    Result r = call({"metrics", "--pred", z, "--gt", z, "--kind", "depth", "--range", "1:200"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out).at("records")[0].at("value") == 0.0);
    r = call({"metrics", "--pred", z, "--gt", z, "--kind", "photo", "--out", (dir / "m.json").string()});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(slurp(dir / "m.json")).at("records")[1].at("value") == "inf");
    CHECK(call({"metrics", "--pred", z, "--gt", z, "--kind", "depth", "--range", "1-100"}).code ==
          cli::kValidation);
  }
  SECTION("corrupt input is an I/O failure") {
    fs::copy(scene, dir / "broken", fs::copy_options::recursive);
    write_file(dir / "broken" / "assoc.raw", "MPIR1");
    CHECK(call({"expand", "--scene", (dir / "broken").string(), "--out", (dir / "o").string()}).code ==
          cli::kIo);
  }
}

TEST_CASE("cli outputs are thread-count invariant", "[cli][parallel]") {
  TempDir dir("cli_threads");
  const std::string scene = synth_fixture(dir);
  for (const char* t : {"1", "8"}) {
    const fs::path o = dir / (std::string("t") + t);
    fs::create_directories(o);
    REQUIRE(call({"--threads", t, "render", "--scene", scene, "--lateral", "0.3", "--out",
                  (o / "r.raw").string()})
                .code == 0);
    REQUIRE(call({"depth", "--scene", scene, "--normalized", "--out", (o / "z.pfm").string(), "--threads", t})
                .code == 0);
  }
  CHECK(same_tree(dir / "t1", dir / "t8"));
}

// End-to-end CLI checks: determinism of reports/artifacts under a fixed seed,
// exit-code conventions, and schema conformance of report.json. The binary
// path arrives via BELTRAMI_CLI (set by ctest); tests are skipped without it.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "core/mesh.hpp"
#include "doctest.h"
#include "json.hpp"
#include "support/fixtures.hpp"

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

const char* cli_path() { return std::getenv("BELTRAMI_CLI"); }

int run_cli(const std::string& args) {
  const std::string cmd = std::string("\"") + cli_path() + "\" " + args + " > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  return WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string fresh_dir(const std::string& name) {
  const fs::path dir = fs::path(beltrami::fixtures::scratch_dir()) / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir.string();
}

std::string sphere_off() {
  static const std::string path = [] {
    const auto p = beltrami::fixtures::scratch_path("cli_sphere.off");
    beltrami::save_mesh_off(beltrami::fixtures::icosphere(2), p);
    return p;
  }();
  return path;
}

// Minimal validator for the subset of JSON Schema used by the report schema:
// type, enum, required, properties, items, oneOf.
bool validate(const json& schema, const json& value);

bool type_matches(const std::string& type, const json& value) {
  if (type == "object") return value.is_object();
  if (type == "array") return value.is_array();
  if (type == "string") return value.is_string();
  if (type == "integer") return value.is_number_integer();
  if (type == "number") return value.is_number();
  if (type == "boolean") return value.is_boolean();
  if (type == "null") return value.is_null();
  return false;
}

bool validate(const json& schema, const json& value) {
  if (schema.contains("oneOf")) {
    int hits = 0;
    for (const auto& option : schema["oneOf"]) hits += validate(option, value) ? 1 : 0;
    if (hits != 1) return false;
  }
  if (schema.contains("type") && !type_matches(schema["type"].get<std::string>(), value)) {
    return false;
  }
  if (schema.contains("enum")) {
    bool found = false;
    for (const auto& candidate : schema["enum"]) found = found || candidate == value;
    if (!found) return false;
  }
  if (schema.contains("required")) {
    for (const auto& key : schema["required"]) {
      if (!value.contains(key.get<std::string>())) return false;
    }
  }
  if (schema.contains("properties") && value.is_object()) {
    for (const auto& [key, sub] : schema["properties"].items()) {
      if (value.contains(key) && !validate(sub, value[key])) return false;
    }
  }
  if (schema.contains("items") && value.is_array()) {
    for (const auto& item : value) {
      if (!validate(schema["items"], item)) return false;
    }
  }
  return true;
}

json report_schema() {
  const auto path = fs::path(__FILE__).parent_path().parent_path().parent_path() / "docs" /
                    "report.schema.json";
  return json::parse(slurp(path));
}

bool check_report(const fs::path& dir, const char* expected_status) {
  const json report = json::parse(slurp(dir / "report.json"));
  if (!validate(report_schema(), report)) return false;
  return report["status"] == expected_status;
}

}  // namespace

TEST_CASE("CLI: every subcommand is deterministic under a fixed seed") {
  if (!cli_path()) {
    MESSAGE("BELTRAMI_CLI not set; skipping CLI tests");
    return;
  }
  const std::string mesh = sphere_off();
  const std::vector<std::pair<std::string, std::string>> runs = {
      {"info", "info --mesh " + mesh},
      {"curvature", "curvature --mesh " + mesh + " --alpha 0.5"},
      {"eigs", "eigs --mesh " + mesh + " --k 8 --seed 3"},
      {"bound-check",
       "bound-check --mesh " + mesh + " --n 5 --n 10 --random-fields 3 --seed 11"},
      {"audit", "audit --mesh " + mesh + " --n 6 --k 8 --trials 5 --seed 11"},
      {"geodesic", "geodesic --mesh " + mesh + " --samples 6"},
      {"canonical", "canonical --mesh " + mesh +
                        " --method spectral --samples 12 --k 16 --m 3 --seed 5"},
      {"rpca", "rpca --mesh " + mesh + " --data coords --mu 0.5 --m 4"},
  };
  for (const auto& [name, args] : runs) {
    CAPTURE(name);
    // Two consecutive runs with the same config into the same directory;
    // first-run bytes are snapshotted before the rerun overwrites them.
    const auto dir = fresh_dir("det_" + name);
    REQUIRE(run_cli(args + " --out " + dir) == 0);
    CHECK(check_report(dir, "ok"));
    std::map<std::string, std::string> first;
    for (const auto& entry : fs::directory_iterator(dir)) {
      first[entry.path().filename().string()] = slurp(entry.path());
    }
    REQUIRE(run_cli(args + " --out " + dir) == 0);

    const json report = json::parse(slurp(fs::path(dir) / "report.json"));
    CHECK(first.at("report.json") == slurp(fs::path(dir) / "report.json"));
    for (const auto& artifact : report["outputs"]) {
      const std::string file = artifact.get<std::string>();
      CAPTURE(file);
      REQUIRE(first.count(file) == 1);
      CHECK(first.at(file) == slurp(fs::path(dir) / file));
    }
  }
}

TEST_CASE("CLI: input errors exit 1 with a machine-readable error object") {
  if (!cli_path()) return;
  const auto dir = fresh_dir("err_input");
  CHECK(run_cli("info --mesh /no/such/mesh.off --out " + dir) == 1);
  const json report = json::parse(slurp(fs::path(dir) / "report.json"));
  CHECK(validate(report_schema(), report));
  CHECK(report["status"] == "error");
  CHECK(report["error"]["numerical"] == false);
  CHECK(report["error"]["name"] == "IoError");
}

TEST_CASE("CLI: numerical failures exit 2") {
  if (!cli_path()) return;
  const auto dir = fresh_dir("err_numeric");
  const int rc =
      run_cli("eigs --mesh " + sphere_off() + " --k 10 --tol 1e-30 --maxit 1 --out " + dir);
  CHECK(rc == 2);
  const json report = json::parse(slurp(fs::path(dir) / "report.json"));
  CHECK(report["error"]["name"] == "ConvergenceFailure");
  CHECK(report["error"]["numerical"] == true);
}

TEST_CASE("CLI: invalid flag values exit 1") {
  if (!cli_path()) return;
  const auto dir = fresh_dir("err_flags");
  CHECK(run_cli("eigs --mesh " + sphere_off() + " --k 8 --alpha 2.0 --out " + dir) == 1);
  const json report = json::parse(slurp(fs::path(dir) / "report.json"));
  CHECK(report["error"]["name"] == "InvalidAlpha");

  // Unparseable flags are input errors too.
  CHECK(run_cli("eigs --mesh " + sphere_off() + " --no-such-flag") == 1);
  CHECK(run_cli("eigs") == 1);  // missing required --mesh
  CHECK(run_cli("--help") == 0);
}

TEST_CASE("CLI: binary matrix format emits SPMX artifacts") {
  if (!cli_path()) return;
  const auto dir = fresh_dir("spmx_out");
  REQUIRE(run_cli("eigs --mesh " + sphere_off() + " --k 5 --format bin --out " + dir) == 0);
  const std::string bytes = slurp(fs::path(dir) / "eigenvectors.spmx");
  REQUIRE(bytes.size() >= 16);
  CHECK(bytes.compare(0, 4, "SPMX") == 0);
  const auto u32 = [&bytes](int offset) {
    return static_cast<unsigned>(static_cast<unsigned char>(bytes[offset])) |
           (static_cast<unsigned>(static_cast<unsigned char>(bytes[offset + 1])) << 8) |
           (static_cast<unsigned>(static_cast<unsigned char>(bytes[offset + 2])) << 16) |
           (static_cast<unsigned>(static_cast<unsigned char>(bytes[offset + 3])) << 24);
  };
  CHECK(u32(4) == 162u);  // rows = vertices
  CHECK(u32(8) == 5u);    // cols = modes
  CHECK(bytes.size() == 16 + 162 * 5 * 8);
}

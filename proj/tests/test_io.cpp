// Config parsing, check execution, sweep behavior across the sign change of
// c1 c2, CSV table format, and report determinism.

#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "jcth/io.hpp"

using namespace jcth;
using io::json;

namespace {

json minimal_config() {
    return json::parse(R"({
      "schema_version": 1,
      "runs": [
        {
          "name": "base",
          "model": {"kind": "jc_resonant", "c1": 4.0, "c2": 1.0,
                    "theta": 0.7, "cutoff": 10},
          "checks": ["spectrum_reality", "closed_form", "pseudoherm"]
        }
      ]
    })");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_CASE("config parsing: happy path") {
    const io::RunConfig cfg = io::parse_config(minimal_config());
    REQUIRE(cfg.runs.size() == 1);
    REQUIRE(cfg.runs[0].model.kind == models::ModelKind::jc_resonant);
    REQUIRE(cfg.runs[0].model.coupling.c1 == 4.0);
    REQUIRE(cfg.runs[0].checks.size() == 3);
}

TEST_CASE("config parsing: errors carry the field path") {
    json doc = minimal_config();
    doc.erase("schema_version");
    try {
        io::parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.field_path == "$.schema_version");
    }

    doc = minimal_config();
    doc["schema_version"] = 99;
    REQUIRE_THROWS_AS(io::parse_config(doc), ConfigError);

    doc = minimal_config();
    doc["runs"][0]["model"]["kind"] = "nosuch";
    try {
        io::parse_config(doc);
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        REQUIRE(e.field_path == "$.runs[0].model.kind");
    }

    doc = minimal_config();
    doc["runs"] = json::array();
    REQUIRE_THROWS_AS(io::parse_config(doc), ConfigError);

    doc = minimal_config();
    doc["runs"][0]["model"]["c1"] = "four";
    REQUIRE_THROWS_AS(io::parse_config(doc), ConfigError);

    doc = minimal_config();
    doc["runs"][0]["tolerances"] = {{"tol_bogus", 1.0}};
    REQUIRE_THROWS_AS(io::parse_config(doc), ConfigError);
}

TEST_CASE("config parsing: check applicability is validated") {
    json doc = minimal_config();
    doc["runs"][0]["model"]["kind"] = "tcm_pauli";
    doc["runs"][0]["checks"] = {"superalgebra"};
    REQUIRE_THROWS_AS(io::parse_config(doc), ConfigError);

    doc = minimal_config();
    doc["runs"][0]["model"]["kind"] = "generalized";
    doc["runs"][0]["checks"] = {"closed_form"};
    REQUIRE_THROWS_AS(io::parse_config(doc), ConfigError);

    doc = minimal_config();
    doc["runs"][0]["checks"] = {"conjecture_etaN"};
    REQUIRE_THROWS_AS(io::parse_config(doc), ConfigError);
}

TEST_CASE("run executor: all checks pass on the benchmark point") {
    const io::RunConfig cfg = io::parse_config(minimal_config());
    const io::RunReport report = io::run(cfg);
    REQUIRE(report.all_passed);
    REQUIRE(report.runs[0].spectrum.has_value());
    REQUIRE(report.runs[0].base.classification == "all_real");
}

TEST_CASE("sweep across the sign change flips the classification") {
    json doc = minimal_config();
    doc["runs"][0]["checks"] = {"spectrum_reality"};
    doc["runs"][0]["sweep"] = {{"c2", {-1.0, -0.5, 0.0, 0.5, 1.0}}};
    const io::RunReport report = io::run(io::parse_config(doc));
    REQUIRE(report.all_passed);
    const auto& pts = report.runs[0].sweep_points;
    REQUIRE(pts.size() == 5);
    REQUIRE(pts[0].classification == "conjugate_paired");
    REQUIRE(pts[1].classification == "conjugate_paired");
    REQUIRE(pts[2].classification == "critical_no_claim");
    REQUIRE(pts[3].classification == "all_real");
    REQUIRE(pts[4].classification == "all_real");
}

TEST_CASE("dimension cap failures surface per run, not as exceptions") {
    json doc = minimal_config();
    doc["max_dim"] = 8;
    const io::RunReport report = io::run(io::parse_config(doc));
    REQUIRE_FALSE(report.all_passed);
    REQUIRE_FALSE(report.runs[0].base.checks[0].passed);
    REQUIRE(report.runs[0].base.checks[0].message.find("exceeds limit") != std::string::npos);
}

TEST_CASE("spectrum CSV: header, ordering, and field population") {
    json doc = minimal_config();
    const io::RunReport report = io::run(io::parse_config(doc));
    const std::string path = "test_spectrum_out.csv";
    io::emit_spectrum_csv(*report.runs[0].spectrum, path);
    const std::string text = slurp(path);
    std::remove(path.c_str());

    std::istringstream lines(text);
    std::string line;
    REQUIRE(std::getline(lines, line));
    REQUIRE(line == "index,block,branch,re,im,boundary,closed_form_re,closed_form_delta");

    int rows = 0;
    double prev_re = -1e300;
    int boundary_rows = 0, annotated = 0;
    while (std::getline(lines, line)) {
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        // trailing empty cell is not returned by getline; normalize
        while (cells.size() < 8) cells.push_back("");
        REQUIRE(cells[0] == std::to_string(rows));
        const double re = std::stod(cells[3]);
        REQUIRE(re >= prev_re);
        prev_re = re;
        REQUIRE((cells[5] == "true" || cells[5] == "false"));
        if (cells[5] == "true") ++boundary_rows;
        if (!cells[6].empty()) {
            ++annotated;
            REQUIRE(!cells[7].empty());
            REQUIRE(std::stod(cells[7]) < 1e-9);
        }
        ++rows;
    }
    REQUIRE(rows == 20);            // full spectrum at cutoff 10
    REQUIRE(boundary_rows == 3);    // top 1x1 block plus the top doublet
    REQUIRE(annotated == 17);       // ground + 2*(cutoff-2) closed-form levels
}

TEST_CASE("17-digit rendering round-trips doubles") {
    for (double v : {1.0 / 3.0, 2.0 + std::sqrt(3.0), -1.2345678901234567e-11}) {
        REQUIRE(std::stod(io::fmt17(v)) == v);
    }
}

TEST_CASE("reports are deterministic across repeated execution") {
    json doc = minimal_config();
    doc["runs"][0]["sweep"] = {{"c2", {0.5, 1.0}}};
    const std::string a = io::report_json(io::run(io::parse_config(doc))).dump(2);
    const std::string b = io::report_json(io::run(io::parse_config(doc))).dump(2);
    REQUIRE(a == b);
    REQUIRE(a.find("\"all_passed\": true") != std::string::npos);
}

TEST_CASE("grid check is wired through the run executor") {
    json doc = json::parse(R"({
      "schema_version": 1,
      "runs": [
        {
          "name": "grid",
          "model": {"kind": "jc_resonant", "c1": 2.0, "c2": 0.5, "theta": 0.4},
          "checks": ["shapeinv_grid"],
          "family": "tanh",
          "grid_points": 600,
          "grid_levels": 2
        }
      ]
    })");
    const io::RunReport report = io::run(io::parse_config(doc));
    REQUIRE(report.all_passed);
    const auto& res = report.runs[0].base.checks[0].residuals;
    REQUIRE(res.at("shape_invariance") < 1e-12);
    REQUIRE(res.at("structure") < 1e-12);
    REQUIRE(res.at("parent_energy_defect") < 5e-3);
}

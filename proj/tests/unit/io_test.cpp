#include <cstdio>
#include <filesystem>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "geohydro/io/csv.hpp"
#include "geohydro/run/simulate.hpp"
#include "test_support.hpp"

namespace geohydro {
namespace {

using testing::uniform;

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("geohydro_io_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

double random_double(std::mt19937_64& rng) {
  const double mantissa = uniform(rng, -1.0, 1.0);
  const int exponent = static_cast<int>(uniform(rng, -300.0, 300.0));
  return std::ldexp(mantissa, exponent);
}

TEST(Format, MatchesPrintfG17) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const double v = i < 5 ? std::vector<double>{0.0, -0.0, 1.0, 0.1, 1e300}[i] : random_double(rng);
    char expected[40];
    std::snprintf(expected, sizeof expected, "%.17g", v);
    EXPECT_EQ(format_double(v), expected);
  }
}

TEST(Format, RoundTripIsExact) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 5000; ++i) {
    const double v = random_double(rng);
    EXPECT_EQ(parse_double(format_double(v), "test"), v);
  }
}

TEST(Format, RejectsNonFinite) {
  EXPECT_THROW(format_double(std::nan("")), Error);
  EXPECT_THROW(parse_double("inf", "test"), Error);
  EXPECT_THROW(parse_double("1.5x", "test"), Error);
  EXPECT_THROW(parse_double("", "test"), Error);
}

TEST(SnapshotCsv, RoundTripsRandomTables) {
  std::mt19937_64 rng(3);
  const auto dir = scratch_dir("snapshots");
  for (int trial = 0; trial < 20; ++trial) {
    const PeriodicGrid grid(16u << (trial % 3));
    SnapshotTable table{{}, grid.nodes(), {}};
    const int rows = 1 + trial % 5;
    for (int r = 0; r < rows; ++r) {
      table.times.push_back(0.1 * r);
      RealField row(static_cast<Eigen::Index>(grid.size()));
      for (Eigen::Index j = 0; j < row.size(); ++j) row[j] = random_double(rng);
      table.rows.push_back(row);
    }
    const std::string path = (dir / "t.csv").string();
    write_snapshot_csv(path, table);
    const SnapshotTable back = read_snapshot_csv(path);
    ASSERT_EQ(back.times, table.times);
    ASSERT_TRUE((back.nodes == table.nodes).all());
    ASSERT_EQ(back.rows.size(), table.rows.size());
    for (std::size_t r = 0; r < back.rows.size(); ++r) ASSERT_TRUE((back.rows[r] == table.rows[r]).all());
  }
}

TEST(SnapshotCsv, ByteLayout) {
  SnapshotTable table{{0.0, 0.5}, RealField::LinSpaced(2, 0.0, 1.0), {}};
  table.rows.push_back(RealField::Constant(2, 1.0));
  table.rows.push_back(RealField::Constant(2, 0.25));
  EXPECT_EQ(snapshot_csv(table), "t,0,1\n0,1,1\n0.5,0.25,0.25\n");
}

TEST(SnapshotCsv, RejectsRaggedRows) {
  const auto dir = scratch_dir("ragged");
  const std::string path = (dir / "bad.csv").string();
  write_text(path, "t,0,1\n0,1\n");
  EXPECT_THROW(read_snapshot_csv(path), Error);
  write_text(path, "time,0,1\n0,1,1\n");
  EXPECT_THROW(read_snapshot_csv(path), Error);
  EXPECT_THROW(read_snapshot_csv((dir / "missing.csv").string()), Error);
}

TEST(ProfileCsv, RequiresUniformGrid) {
  const auto dir = scratch_dir("profile");
  const PeriodicGrid grid(16);
  ProfileTable table{{"rho"}, grid.nodes(), {grid.constant(1.0)}};
  const std::string path = (dir / "p.csv").string();
  write_profile_csv(path, table);
  const ProfileTable back = read_profile_csv(path);
  EXPECT_TRUE((back.column("rho") == 1.0).all());
  EXPECT_THROW(back.column("theta"), Error);

  table.x[3] += 0.01;
  write_profile_csv(path, table);
  EXPECT_THROW(read_profile_csv(path), Error);
}

// -------------------------------------------------------------- run config

TEST(RunConfig, SnapshotCountFormula) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    RunConfig c;
    c.dt = std::ldexp(1.0, -static_cast<int>(uniform(rng, 3.0, 12.0)));
    c.save_every = 1 + static_cast<long long>(uniform(rng, 0.0, 20.0));
    const long long steps = static_cast<long long>(uniform(rng, 0.0, 400.0));
    c.t_final = static_cast<double>(steps) * c.dt;
    EXPECT_EQ(c.snapshot_count(), steps / c.save_every + 1);
  }
}

TEST(RunConfig, RejectsBadInput) {
  const auto kind = [](const Json& j, const std::string& hint = "") {
    try {
      RunConfig::from_json(j, hint);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::IoError;  // sentinel: nothing thrown
  };
  EXPECT_EQ(kind({{"equation", "hydro"}, {"dtt", 1.0}}), ErrorKind::ConfigError);
  EXPECT_EQ(kind({{"equation", "hydro"}, {"dt", -1.0}}), ErrorKind::ConfigError);
  EXPECT_EQ(kind({{"equation", "hydro"}, {"n", 48}}), ErrorKind::ConfigError);
  EXPECT_EQ(kind({{"equation", "hydro"}}, "schrodinger"), ErrorKind::ConfigError);
  EXPECT_EQ(kind({{"equation", "hydro"}, {"initial", {{"psi_re", "1"}}}}), ErrorKind::ConfigError);
  EXPECT_EQ(kind({{"equation", "hydro"}, {"initial", {{"rho", "1 +"}}}}), ErrorKind::ParseError);
  EXPECT_EQ(kind({{"equation", "much"}, {"potential", {{"V", "0"}}}}), ErrorKind::ConfigError);
  EXPECT_EQ(kind(Json::object()), ErrorKind::ConfigError);
}

TEST(Simulate, ManifestRecordsEverySnapshot) {
  const RunConfig cfg = RunConfig::from_json({{"equation", "neumann"},
                                              {"n", 32},
                                              {"dt", 0.01},
                                              {"t_final", 0.1},
                                              {"save_every", 3},
                                              {"initial", {{"f", "1 + 0.2*cos(x)"}}}});
  const RunResult r = simulate(cfg);
  ASSERT_EQ(r.manifest.snapshots.size(), 4u);
  EXPECT_EQ(r.manifest.snapshots[3].index, 9);
  EXPECT_DOUBLE_EQ(r.manifest.snapshots[3].t, 0.09);
  EXPECT_EQ(r.manifest.conventions["c_V"], kConventions.c_V);
  ASSERT_EQ(r.fields.size(), 2u);
  EXPECT_EQ(r.fields[0].second.rows.size(), 4u);
}

TEST(Simulate, ManifestRoundTrips) {
  const RunResult r = simulate(RunConfig::from_json(
      {{"equation", "twohs"}, {"n", 16}, {"dt", 0.01}, {"t_final", 0.05},
       {"initial", {{"u", "0.1*sin(x)"}, {"sigma", "0.1*cos(x)"}}}}));
  const RunManifest back = RunManifest::from_json(Json::parse(manifest_text(r.manifest)));
  EXPECT_EQ(manifest_text(back), manifest_text(r.manifest));
}

TEST(Simulate, SeededPerturbationIsReproducible) {
  Json j{{"equation", "much"}, {"n", 32}, {"dt", 0.01}, {"t_final", 0.02},
         {"perturbation", 0.1}, {"seed", 42}};
  const auto first = [&] { return simulate(RunConfig::from_json(j)).fields[0].second.rows[0]; };
  const RealField a = first();
  EXPECT_TRUE((a == first()).all());
  EXPECT_GT(sup_norm(a), 0.0);
  j["seed"] = 43;
  EXPECT_FALSE((a == first()).all());
}

TEST(Simulate, VacuumFormationAborts) {
  try {
    simulate(RunConfig::from_json({{"equation", "hydro"},
                                   {"n", 64},
                                   {"dt", 0.01},
                                   {"t_final", 5.0},
                                   {"initial", {{"rho", "1 + 0.5*cos(x)"}, {"theta", "2*sin(x)"}}}}));
    ADD_FAILURE() << "no vacuum detected";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::VacuumFormation);
  }
}

}  // namespace
}  // namespace geohydro

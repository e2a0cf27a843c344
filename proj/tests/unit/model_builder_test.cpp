#include "stochroute/model_builder.hpp"

#include <gtest/gtest.h>

#include <map>
#include <sstream>

#include "stochroute/generator.hpp"
#include "stochroute/simplex.hpp"
#include "stochroute/tsplib.hpp"

namespace stochroute {
namespace {

std::vector<TsplibNode> bays_coords() {
  return load_tsplib_file(std::string(STOCHROUTE_DATA_DIR) + "/bays29.tsp").nodes;
}

std::map<std::string, int> row_families(const LinearModel& m) {
  std::map<std::string, int> out;
  for (const Row& r : m.rows()) ++out[r.name.substr(0, r.name.find('_'))];
  return out;
}

TEST(BuildTwoStage, Bays29Counts) {
  const auto in = generate_instance(bays_coords(), "bays29", 5, 3, 100, 1);
  const auto built = build_two_stage(in);
  const std::size_t nt = 29, nk = 5, nw = 100;
  EXPECT_EQ(built.vars.num_x(), nk * (nt + 1) * nt);
  EXPECT_EQ(built.vars.num_x(), 4350u);
  EXPECT_EQ(built.vars.num_y(), 145u);
  EXPECT_EQ(built.vars.num_z(), 500u);
  EXPECT_EQ(built.vars.num_h(), 5u);
  EXPECT_EQ(built.model.num_columns(), 4350u + 145 + 500 + 5);
  EXPECT_TRUE(built.vars.is_bijective(built.model.num_columns()));
  auto fam = row_families(built.model);
  EXPECT_EQ(fam["out"] + fam["in"], 290);
  EXPECT_EQ(fam["assign"], 29);
  EXPECT_EQ(fam["svc"], 500);
  EXPECT_EQ(fam["dout"] + fam["din"], 10);
  EXPECT_EQ(fam["link"], 145);
  EXPECT_EQ(built.model.num_rows(), 290u + 29 + 500 + 10 + 145);
  EXPECT_NO_THROW(built.model.validate());
  (void)nw;
}

TEST(BuildTwoStage, StructureAndRequiredFixing) {
  const auto in = generate_instance(bays_coords(), "bays29", 3, 2, 6, 8);
  const auto built = build_two_stage(in);
  const auto& m = built.model;
  std::vector<int> assign_hits(m.num_columns()), svc_hits(m.num_columns());
  for (const Row& r : m.rows()) {
    const std::string fam = r.name.substr(0, r.name.find('_'));
    for (int c : r.index) {
      if (fam == "assign") ++assign_hits[c];
      if (fam == "svc") ++svc_hits[c];
    }
  }
  for (std::size_t i = 0; i < in.num_targets(); ++i)
    for (std::size_t k = 0; k < in.num_vehicles(); ++k) {
      const int c = built.vars.y(i, k);
      EXPECT_EQ(assign_hits[c], 1);
      EXPECT_EQ(svc_hits[c], 6);
      const int owner = in.required_owner(i);
      const Column& col = m.column(c);
      EXPECT_TRUE(col.integer);
      if (owner < 0) {
        EXPECT_EQ(col.lower, 0.0);
        EXPECT_EQ(col.upper, 1.0);
      } else {
        const double fixed = owner == static_cast<int>(k) ? 1.0 : 0.0;
        EXPECT_EQ(col.lower, fixed);
        EXPECT_EQ(col.upper, fixed);
      }
    }
  for (std::size_t k = 0; k < in.num_vehicles(); ++k) {
    for (std::size_t w = 0; w < 6; ++w) {
      const Column& z = m.column(built.vars.z(k, w));
      EXPECT_EQ(z.lower, 0.0);
      EXPECT_FALSE(z.integer);
      EXPECT_DOUBLE_EQ(z.cost, in.scenarios.prob(w) * in.vehicles[k].gamma);
    }
    const auto& cost = built.costs[k];
    for (std::size_t i = 0; i <= in.num_targets(); ++i)
      for (std::size_t j = 0; j <= in.num_targets(); ++j) {
        if (i == j) {
          EXPECT_EQ(built.vars.x(k, i, j), -1);
          continue;
        }
        EXPECT_EQ(m.column(built.vars.x(k, i, j)).cost, cost(i, j));
      }
  }
  for (const Row& r : m.rows()) EXPECT_EQ(r.name.rfind("sec", 0), std::string::npos);
}

Instance one_target() {
  Instance in;
  in.name = "one";
  in.targets = {{10, 0, 0}};
  in.depots = {{0, 0, 0}};
  in.vehicles = {{0, 1.0, 1000.0}};
  in.required = {{}};
  in.scenarios = ScenarioSet(1, 1, 1);
  in.scenarios.tau(0, 0, 0) = 4.0;
  in.tau_bar = {4.0};
  return in;
}

TEST(BuildTwoStage, SingleRoundTrip) {
  const Instance in = one_target();
  const auto built = build_two_stage(in);
  const auto s = solve_lp(built.model);
  ASSERT_EQ(s.status, LpStatus::Optimal);
  const auto& c = built.costs[0];
  EXPECT_NEAR(s.objective, c(1, 0) + c(0, 1), 1e-9);
  EXPECT_NEAR(s.primal[built.vars.z(0, 0)], 0.0, 1e-12);
}

TEST(BuildEvp, SingleScenarioMatchesTwoStage) {
  const auto in = generate_instance(bays_coords(), "bays29", 2, 1, 1, 5);
  const auto a = build_two_stage(in), b = build_evp(in);
  ASSERT_EQ(a.model.num_columns(), b.model.num_columns());
  ASSERT_EQ(a.model.num_rows(), b.model.num_rows());
  for (std::size_t j = 0; j < a.model.num_columns(); ++j)
    EXPECT_DOUBLE_EQ(a.model.column(j).cost, b.model.column(j).cost);
  for (std::size_t i = 0; i < a.model.num_rows(); ++i) EXPECT_EQ(a.model.row(i).value, b.model.row(i).value);
  EXPECT_NEAR(solve_lp(a.model).objective, solve_lp(b.model).objective, 1e-9);
}

TEST(BuildEvp, CollapsesScenarios) {
  const auto in = generate_instance(bays_coords(), "bays29", 2, 1, 100, 3);
  const auto evp = build_evp(in);
  const auto full = build_two_stage(in);
  EXPECT_EQ(evp.vars.num_z(), 2u);
  EXPECT_EQ(full.vars.num_z(), 200u);
  EXPECT_EQ(evp.model.kind, ModelKind::ExpectedValue);
  EXPECT_TRUE(evp.vars.is_bijective(evp.model.num_columns()));
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(evp.model.column(evp.vars.z(k, 0)).cost, in.vehicles[k].gamma);
    for (const Row& r : evp.model.rows()) {
      if (r.name != "svc_" + std::to_string(k) + "_0") continue;
      for (std::size_t i = 0; i < in.num_targets(); ++i)
        EXPECT_DOUBLE_EQ(r.value[i], in.cap(i, k) - in.scenarios.expected_tau(i, k));
    }
  }
}

TEST(LinearModel, MpsExport) {
  const auto built = build_two_stage(one_target());
  std::ostringstream out;
  built.model.write_mps(out);
  const std::string text = out.str();
  EXPECT_NE(text.find("ROWS"), std::string::npos);
  EXPECT_NE(text.find("x_0_0_1"), std::string::npos);
  EXPECT_NE(text.find("MARKER"), std::string::npos);
  EXPECT_NE(text.find("ENDATA"), std::string::npos);
}

TEST(LinearModel, ValidateRejectsBadReferences) {
  LinearModel m;
  m.add_column({"a", 0, 0, 1, false});
  m.add_row({"r", {3}, {1.0}, Sense::Equal, 0});
  EXPECT_THROW(m.validate(), std::invalid_argument);
}

}  // namespace
}  // namespace stochroute

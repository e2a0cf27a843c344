#include "stochroute/model_builder.hpp"

#include <stdexcept>
#include <string>

namespace stochroute {

VariableMap::VariableMap(std::size_t targets, std::size_t vehicles, std::size_t penalty_slots)
    : targets_(targets), vehicles_(vehicles), slots_(penalty_slots),
      x_(vehicles * (targets + 1) * (targets + 1), -1), y_(targets * vehicles, -1),
      z_(vehicles * penalty_slots, -1), h_(vehicles, -1) {}

std::size_t VariableMap::num_x() const noexcept {
  std::size_t count = 0;
  for (int c : x_) count += c >= 0 ? 1 : 0;
  return count;
}

bool VariableMap::is_bijective(std::size_t columns) const {
  std::vector<int> hits(columns, 0);
  auto mark = [&](const std::vector<int>& list, bool allow_missing) {
    for (int c : list) {
      if (c < 0) {
        if (!allow_missing) return false;
        continue;
      }
      if (static_cast<std::size_t>(c) >= columns) return false;
      ++hits[static_cast<std::size_t>(c)];
    }
    return true;
  };
  if (!mark(x_, true) || !mark(y_, false) || !mark(z_, false) || !mark(h_, false)) return false;
  for (int n : hits)
    if (n != 1) return false;
  return true;
}

namespace {

std::string name(const char* prefix, std::initializer_list<std::size_t> parts) {
  std::string out(prefix);
  for (std::size_t p : parts) out += "_" + std::to_string(p);
  return out;
}

// Shared first stage: x, y, h columns with degree, assignment and depot rows.
// The recourse block is added by the caller.
BuiltModel first_stage(const Instance& in, std::vector<CostMatrix> costs, std::size_t penalty_slots,
                       ModelKind kind) {
  validate(in);
  const std::size_t nt = in.num_targets();
  const std::size_t nk = in.num_vehicles();
  if (costs.size() != nk) throw std::invalid_argument("build: one cost matrix per vehicle required");
  for (const auto& c : costs)
    if (c.size() != nt + 1) throw std::invalid_argument("build: cost matrix size must be |T|+1");

  BuiltModel built{LinearModel{}, VariableMap(nt, nk, penalty_slots), std::move(costs)};
  LinearModel& m = built.model;
  VariableMap& v = built.vars;
  m.kind = kind;
  m.instance_name = in.name;

  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t i = 0; i <= nt; ++i)
      for (std::size_t j = 0; j <= nt; ++j) {
        if (i == j) continue;
        v.x(k, i, j) = m.add_column({name("x", {k, i, j}), built.costs[k](i, j), 0.0, 1.0, true});
      }

  std::vector<int> owner(nt);
  for (std::size_t i = 0; i < nt; ++i) owner[i] = in.required_owner(i);
  for (std::size_t i = 0; i < nt; ++i)
    for (std::size_t k = 0; k < nk; ++k) {
      double lo = 0.0, hi = 1.0;
      if (owner[i] >= 0) lo = hi = static_cast<std::size_t>(owner[i]) == k ? 1.0 : 0.0;
      v.y(i, k) = m.add_column({name("y", {i, k}), 0.0, lo, hi, true});
    }

  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t w = 0; w < penalty_slots; ++w) {
      const double weight = kind == ModelKind::Stochastic ? in.scenarios.prob(w) : 1.0;
      v.z(k, w) = m.add_column({name("z", {k, w}), weight * in.vehicles[k].gamma, 0.0, kInfinity, false});
    }
  for (std::size_t k = 0; k < nk; ++k) v.h(k) = m.add_column({name("h", {k}), 0.0, 0.0, 1.0, true});

  for (std::size_t k = 0; k < nk; ++k)
    for (std::size_t i = 0; i < nt; ++i) {
      Row out{name("out", {i, k}), {}, {}, Sense::Equal, 0.0};
      Row inr{name("in", {i, k}), {}, {}, Sense::Equal, 0.0};
      for (std::size_t j = 0; j <= nt; ++j) {
        if (j == i) continue;
        out.index.push_back(v.x(k, i, j));
        out.value.push_back(1.0);
        inr.index.push_back(v.x(k, j, i));
        inr.value.push_back(1.0);
      }
      out.index.push_back(v.y(i, k));
      out.value.push_back(-1.0);
      inr.index.push_back(v.y(i, k));
      inr.value.push_back(-1.0);
      m.add_row(std::move(out));
      m.add_row(std::move(inr));
    }

  for (std::size_t i = 0; i < nt; ++i) {
    Row assign{name("assign", {i}), {}, {}, Sense::Equal, 1.0};
    for (std::size_t k = 0; k < nk; ++k) {
      assign.index.push_back(v.y(i, k));
      assign.value.push_back(1.0);
    }
    m.add_row(std::move(assign));
  }
  return built;
}

// Depot degree and activation rows, emitted after the recourse block.
void depot_rows(BuiltModel& built) {
  LinearModel& m = built.model;
  const VariableMap& v = built.vars;
  const std::size_t nt = v.num_targets();
  const std::size_t depot = v.depot_local();
  for (std::size_t k = 0; k < v.num_vehicles(); ++k) {
    Row out{name("dout", {k}), {}, {}, Sense::Equal, 0.0};
    Row inr{name("din", {k}), {}, {}, Sense::Equal, 0.0};
    for (std::size_t j = 0; j < nt; ++j) {
      out.index.push_back(v.x(k, depot, j));
      out.value.push_back(1.0);
      inr.index.push_back(v.x(k, j, depot));
      inr.value.push_back(1.0);
    }
    out.index.push_back(v.h(k));
    out.value.push_back(-1.0);
    inr.index.push_back(v.h(k));
    inr.value.push_back(-1.0);
    m.add_row(std::move(out));
    m.add_row(std::move(inr));
  }
  for (std::size_t k = 0; k < v.num_vehicles(); ++k)
    for (std::size_t i = 0; i < nt; ++i)
      m.add_row({name("link", {i, k}), {v.y(i, k), v.h(k)}, {1.0, -1.0}, Sense::LessEqual, 0.0});
}

}  // namespace

BuiltModel build_two_stage(const Instance& instance) {
  return build_two_stage(instance, vehicle_cost_matrices(instance));
}

BuiltModel build_two_stage(const Instance& in, std::vector<CostMatrix> costs) {
  const std::size_t nw = in.num_scenarios();
  BuiltModel built = first_stage(in, std::move(costs), nw, ModelKind::Stochastic);
  const VariableMap& v = built.vars;
  for (std::size_t k = 0; k < in.num_vehicles(); ++k)
    for (std::size_t w = 0; w < nw; ++w) {
      Row svc{name("svc", {k, w}), {}, {}, Sense::GreaterEqual, 0.0};
      for (std::size_t i = 0; i < in.num_targets(); ++i) {
        svc.index.push_back(v.y(i, k));
        svc.value.push_back(in.cap(i, k) - in.scenarios.tau(i, k, w));
      }
      svc.index.push_back(v.z(k, w));
      svc.value.push_back(1.0);
      built.model.add_row(std::move(svc));
    }
  depot_rows(built);
  return built;
}

BuiltModel build_evp(const Instance& instance) { return build_evp(instance, vehicle_cost_matrices(instance)); }

BuiltModel build_evp(const Instance& in, std::vector<CostMatrix> costs) {
  BuiltModel built = first_stage(in, std::move(costs), 1, ModelKind::ExpectedValue);
  const VariableMap& v = built.vars;
  for (std::size_t k = 0; k < in.num_vehicles(); ++k) {
    Row svc{name("svc", {k, 0}), {}, {}, Sense::GreaterEqual, 0.0};
    for (std::size_t i = 0; i < in.num_targets(); ++i) {
      svc.index.push_back(v.y(i, k));
      svc.value.push_back(in.cap(i, k) - in.scenarios.expected_tau(i, k));
    }
    svc.index.push_back(v.z(k, 0));
    svc.value.push_back(1.0);
    built.model.add_row(std::move(svc));
  }
  depot_rows(built);
  return built;
}

}  // namespace stochroute

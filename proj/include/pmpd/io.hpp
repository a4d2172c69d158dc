#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pmpd/bounds.hpp"
#include "pmpd/builder.hpp"
#include "pmpd/error.hpp"
#include "pmpd/evaluator.hpp"
#include "pmpd/exact_search.hpp"
#include "pmpd/instance.hpp"
#include "pmpd/seeds.hpp"
#include "pmpd/walk.hpp"

namespace pmpd::io {

using nlohmann::json;

inline json point_json(const Point& p) { return json::array({p.x, p.y}); }

inline json instance_json(const Instance& inst) {
  json j;
  j["name"] = inst.name();
  if (const auto& pts = inst.coords()) {
    j["depot"] = point_json(pts->front());
    j["targets"] = json::array();
    for (std::size_t i = 1; i < pts->size(); ++i) j["targets"].push_back(point_json((*pts)[i]));
  } else {
    j["n"] = inst.n();
    j["matrix"] = inst.matrix();
  }
  return j;
}

inline Instance instance_from_json(const json& j) {
  try {
    Instance inst;
    if (j.contains("matrix")) {
      const auto matrix = j.at("matrix").get<std::vector<std::vector<double>>>();
      const int n = j.contains("n") ? j.at("n").get<int>() : static_cast<int>(matrix.size()) - 1;
      inst = from_matrix(matrix, n);
    } else {
      std::vector<Point> pts;
      const auto d = j.at("depot").get<std::vector<double>>();
      if (d.size() != 2) throw Error(ErrorCode::malformed_input, "depot must be [x, y]");
      pts.push_back({d[0], d[1]});
      for (const auto& t : j.at("targets")) {
        const auto xy = t.get<std::vector<double>>();
        if (xy.size() != 2) throw Error(ErrorCode::malformed_input, "targets must be [x, y] pairs");
        pts.push_back({xy[0], xy[1]});
      }
      inst = from_points(pts, 0);
    }
    return inst.with_name(j.value("name", std::string{}));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::malformed_input, e.what());
  }
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::malformed_input, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::malformed_input, path + ": " + e.what());
  }
}

inline void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::malformed_input, "cannot write " + path);
  out << j.dump(2) << "\n";
}

inline Instance load_instance(const std::string& path) { return instance_from_json(read_json_file(path)); }

inline json walk_json(const Walk& w) {
  json visits = json::array();
  for (Visit v : w.visits()) {
    if (v.is_depot())
      visits.push_back("d");
    else
      visits.push_back(v.node());
  }
  return {{"kind", std::string(to_string(w.kind()))}, {"visits", visits}};
}

inline Walk walk_from_json(const json& j) {
  try {
    std::vector<Visit> seq;
    for (const auto& v : j.at("visits")) {
      if (v.is_string()) {
        if (v.get<std::string>() != "d") throw Error(ErrorCode::malformed_input, "unknown visit " + v.dump());
        seq.push_back(kDepot);
      } else {
        const int id = v.get<int>();
        if (id < 1) throw Error(ErrorCode::malformed_input, "target ids start at 1");
        seq.push_back(Visit::target(id));
      }
    }
    if (seq.size() < 2) throw Error(ErrorCode::malformed_input, "walk needs at least two elements");
    WalkKind kind = seq.front().is_depot() ? WalkKind::pmpd : WalkKind::pmp;
    if (j.contains("kind")) {
      const auto k = j.at("kind").get<std::string>();
      if (k == "pmp")
        kind = WalkKind::pmp;
      else if (k == "pmpd")
        kind = WalkKind::pmpd;
      else
        throw Error(ErrorCode::malformed_input, "kind must be pmp or pmpd");
    }
    return Walk(kind, std::move(seq));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::malformed_input, e.what());
  }
}

inline json certificate_json(const Certificate& c) {
  json j{{"status", std::string(to_string(c.status))}, {"dual_bound", c.dual_bound}};
  if (c.status == CertificateStatus::best_found) j["gap_pct"] = c.gap_pct;
  return j;
}

inline json seed_json(const SeedResult& s) {
  return {{"walk", walk_json(s.walk)},
          {"value", s.value},
          {"certificate", certificate_json(s.cert)},
          {"millis", s.millis},
          {"nodes", s.nodes}};
}

inline json seeds_json(const SeedWalks& s) {
  return {{"n", s.n},
          {"wd_n1", seed_json(s.wd_n1)},
          {"wd_n2", seed_json(s.wd_n2)},
          {"w_n1", seed_json(s.w_n1)},
          {"rd_n1", s.rd_n1()},
          {"rd_n2", s.rd_n2()},
          {"r_n1", s.r_n1()},
          {"certified", s.certified()}};
}

inline json bound_json(const BoundReport& r) {
  return {{"k", r.k},
          {"n", r.n},
          {"p", r.p},
          {"q", r.q},
          {"lb", r.lb},
          {"proven_lb", r.proven_lb},
          {"case", std::string(to_string(r.case_tag))},
          {"rd_n1", r.rd_n1},
          {"rd_n2", r.rd_n2},
          {"r_n1", r.r_n1},
          {"certified", r.certified},
          {"advisory", r.advisory()},
          {"tight_range_note", r.tight_range_note}};
}

inline json plan_json(const ConstructionPlan& p) {
  json arrangement = json::array();
  for (BlockRole r : p.arrangement) arrangement.push_back(std::string(to_string(r)));
  return {{"k", p.k},
          {"pivot", p.pivot},
          {"base_len", p.base_len},
          {"x", p.x},
          {"y", p.y},
          {"arrangement", arrangement},
          {"below_guaranteed", p.below_guaranteed},
          {"cyclic_adjacency", p.cyclic_adjacency}};
}

inline json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

inline json build_json(const BuildResult& r) {
  json candidates = json::object();
  for (const auto& [s, ub] : r.candidates) candidates[std::string(to_string(s))] = ub;
  return {{"walk", walk_json(r.walk)},
          {"ub", r.ub},
          {"lb", r.bound.lb},
          {"gap_pct", r.gap_pct},
          {"scheme", std::string(to_string(r.scheme))},
          {"r1", optional_number(r.r1)},
          {"r2", r.r2},
          {"r2_alt", r.r2_alt},
          {"r3", r.r3},
          {"certified", r.bound.certified},
          {"plan", plan_json(r.plan)},
          {"candidates", candidates}};
}

inline json solve_json(const SolveResult& r) {
  return {{"walk", walk_json(r.walk)},
          {"ub", r.ub},
          {"lb", r.lb},
          {"certificate", certificate_json(r.cert)},
          {"nodes", r.stats.nodes},
          {"millis", r.stats.millis}};
}

inline json profile_json(const RevisitProfile& p) {
  json gaps = json::object();
  for (std::size_t t = 1; t < p.worst_gap.size(); ++t) gaps[std::to_string(t)] = p.worst_gap[t];
  return {{"travel_time", p.travel}, {"revisit_time", p.revisit}, {"worst_target", p.worst_target}, {"worst_gap", gaps}};
}

}  // namespace pmpd::io

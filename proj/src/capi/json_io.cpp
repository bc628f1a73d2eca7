#include "json_io.hpp"

#include "apportion/error.hpp"

namespace apportion::io {

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, e.what());
  }
}

namespace {

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::Parse, std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::int64_t int_from(const json& j) {
  if (j.is_number_integer()) return j.get<std::int64_t>();
  if (j.is_string()) {
    Rat r = Rat::parse(j.get<std::string>());
    if (!r.is_integer()) throw Error(ErrorKind::Parse, "expected an integer, got " + r.str());
    return to_int64(r.num());
  }
  throw Error(ErrorKind::Parse, "expected an integer");
}

}  // namespace

Rat rat_from(const json& j) {
  if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<std::int64_t>()));
  if (j.is_string()) return Rat::parse(j.get<std::string>());
  throw Error(ErrorKind::Parse, "expected a rational string such as \"3/4\"");
}

json rat_to(const Rat& r) { return r.str(); }

json rats_to(const std::vector<Rat>& v) {
  json out = json::array();
  for (const auto& r : v) out.push_back(r.str());
  return out;
}

Instance instance_from(const json& j) {
  const json& pops = field(j, "populations");
  if (!pops.is_array()) throw Error(ErrorKind::Parse, "\"populations\" must be an array");
  std::vector<std::int64_t> p;
  for (const auto& v : pops) p.push_back(int_from(v));
  return Instance(std::move(p), int_from(field(j, "house")));
}

json instance_to(const Instance& inst) {
  return json{{"populations", inst.populations()}, {"house", inst.house()}};
}

json outcome_to(const Outcome& o) {
  return json{{"base", o.base()}, {"tied", o.tied()}, {"extra", o.extra()}};
}

json atlas_to(const BreakpointAtlas& atlas) {
  json out;
  out["breakpoints"] = rats_to(atlas.breakpoints);
  json intervals = json::array();
  for (std::size_t k = 0; k < atlas.interval_outcomes.size(); ++k) {
    json cell = outcome_to(atlas.interval_outcomes[k]);
    cell["lo"] = (k == 0 ? Rat(0) : atlas.breakpoints[k - 1]).str();
    cell["hi"] = (k == atlas.breakpoints.size() ? Rat(1) : atlas.breakpoints[k]).str();
    intervals.push_back(std::move(cell));
  }
  out["intervals"] = std::move(intervals);
  json at = json::array();
  for (std::size_t k = 0; k < atlas.breakpoint_outcomes.size(); ++k) {
    json cell = outcome_to(atlas.breakpoint_outcomes[k]);
    cell["at"] = atlas.breakpoints[k].str();
    at.push_back(std::move(cell));
  }
  out["at_breakpoints"] = std::move(at);
  out["endpoints"] = json{{"zero", atlas.at_zero ? outcome_to(*atlas.at_zero) : json(nullptr)},
                          {"one", outcome_to(atlas.at_one)}};
  return out;
}

json quota_partition_to(const QuotaPartition& qp) {
  return json{{"tau", qp.tau_low.str()}, {"tau_bar", qp.tau_high.str()}};
}

json segments_to(const std::vector<PowerMeanSegment>& segs) {
  json out = json::array();
  for (const auto& s : segs) {
    json cell = outcome_to(s.outcome);
    cell["lo"] = s.lo.str();
    cell["hi"] = s.hi.str();
    cell["widened"] = s.widened;
    out.push_back(std::move(cell));
  }
  return json{{"segments", std::move(out)}};
}

DeltaDistribution distribution_from(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::Parse, "distribution must be an object");
  std::vector<Atom> atoms;
  std::vector<UniformPiece> pieces;
  if (j.contains("atoms"))
    for (const auto& a : j.at("atoms")) atoms.push_back({rat_from(field(a, "at")), rat_from(field(a, "mass"))});
  if (j.contains("uniform"))
    for (const auto& u : j.at("uniform")) {
      Rat mass = rat_from(field(u, "mass"));
      if (mass.sign() == 0) continue;
      pieces.push_back({rat_from(field(u, "lo")), rat_from(field(u, "hi")), mass});
    }
  return DeltaDistribution(std::move(atoms), std::move(pieces));
}

TieBreak tiebreak_from(const std::string& name) {
  if (name == "uniform") return TieBreak::Uniform;
  if (name == "lexmax") return TieBreak::LexMax;
  if (name == "lexmin") return TieBreak::LexMin;
  if (name == "random") return TieBreak::SeededRandom;
  throw Error(ErrorKind::UnsupportedTieBreak, "unknown tie-break \"" + name + "\"");
}

std::vector<Rat> shifts_from(const json& j) {
  const json& arr = j.is_object() ? field(j, "deltas") : j;
  if (!arr.is_array()) throw Error(ErrorKind::Parse, "shifts must be an array");
  std::vector<Rat> out;
  for (const auto& v : arr) out.push_back(rat_from(v));
  return out;
}

ArrangementSpec arrangement_from(const json& j) {
  const json& lines = field(j, "lines");
  if (!lines.is_array()) throw Error(ErrorKind::Parse, "\"lines\" must be an array");
  ArrangementSpec spec;
  for (const auto& l : lines) spec.push_back({rat_from(field(l, "m")), rat_from(field(l, "c"))});
  return spec;
}

json arrangement_to(const ArrangementSpec& spec) {
  json lines = json::array();
  for (const auto& l : spec) lines.push_back(json{{"m", l.m.str()}, {"c", l.c.str()}});
  return json{{"lines", std::move(lines)}};
}

json arrangement_instance_to(const ArrangementInstance& ai) {
  return json{{"instance", instance_to(ai.instance)},
              {"level", ai.level},
              {"normalized", arrangement_to(ai.normalized)},
              {"rational_populations", rats_to(ai.rational_populations)},
              {"scale", ai.scale.get_str()}};
}

json decomposition_to(const Decomposition& dec) {
  json points = json::array();
  for (const auto& p : dec.points) points.push_back(p.assign);
  return json{{"points", std::move(points)}, {"weights", rats_to(dec.weights)}};
}

}  // namespace apportion::io

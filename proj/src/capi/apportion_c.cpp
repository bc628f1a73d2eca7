#include "apportion/apportion.h"

#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "apportion/error.hpp"
#include "json_io.hpp"

using namespace apportion;
using io::json;

struct ap_instance {
  Instance inst;
};

struct ap_atlas {
  BreakpointAtlas atlas;
};

struct ap_decomposition {
  Decomposition dec;
};

namespace {

thread_local std::string last_error;

ap_status status_of(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return AP_INVALID_ARGUMENT;
    case ErrorKind::InvalidDelta: return AP_INVALID_DELTA;
    case ErrorKind::EmptyOutcome: return AP_EMPTY_OUTCOME;
    case ErrorKind::DimensionMismatch: return AP_DIMENSION_MISMATCH;
    case ErrorKind::Parse: return AP_PARSE;
    case ErrorKind::InvalidDistribution: return AP_INVALID_DISTRIBUTION;
    case ErrorKind::UnsupportedTieBreak: return AP_UNSUPPORTED_TIE_BREAK;
    case ErrorKind::DegenerateArrangement: return AP_DEGENERATE_ARRANGEMENT;
    case ErrorKind::ResourceCap: return AP_RESOURCE_CAP;
    case ErrorKind::Internal: return AP_INTERNAL;
  }
  return AP_INTERNAL;
}

template <class F>
ap_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return AP_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return AP_RESOURCE_CAP;
  } catch (const std::exception& e) {
    last_error = e.what();
    return AP_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorKind::InvalidArgument, std::string("null ") + what);
}

void emit(const json& j, char** out) {
  require(out, "output pointer");
  std::string s = j.dump();
  char* buf = new char[s.size() + 1];
  std::memcpy(buf, s.c_str(), s.size() + 1);
  *out = buf;
}

FlowLimits limits_of(const ap_limits* l) {
  FlowLimits f;
  if (l) {
    if (l->max_nodes) f.max_nodes = l->max_nodes;
    if (l->max_horizon) f.max_horizon = l->max_horizon;
  }
  return f;
}

const Instance& deref(const ap_instance* inst) {
  require(inst, "instance");
  return inst->inst;
}

std::string text(const char* s, const char* what) {
  require(s, what);
  return s;
}

json samples_to(const std::vector<Seats>& draws) {
  return json{{"samples", draws}};
}

}  // namespace

extern "C" {

const char* ap_status_name(ap_status status) {
  switch (status) {
    case AP_OK: return "Ok";
    case AP_INVALID_ARGUMENT: return error_kind_name(ErrorKind::InvalidArgument);
    case AP_INVALID_DELTA: return error_kind_name(ErrorKind::InvalidDelta);
    case AP_EMPTY_OUTCOME: return error_kind_name(ErrorKind::EmptyOutcome);
    case AP_DIMENSION_MISMATCH: return error_kind_name(ErrorKind::DimensionMismatch);
    case AP_PARSE: return error_kind_name(ErrorKind::Parse);
    case AP_INVALID_DISTRIBUTION: return error_kind_name(ErrorKind::InvalidDistribution);
    case AP_UNSUPPORTED_TIE_BREAK: return error_kind_name(ErrorKind::UnsupportedTieBreak);
    case AP_DEGENERATE_ARRANGEMENT: return error_kind_name(ErrorKind::DegenerateArrangement);
    case AP_RESOURCE_CAP: return error_kind_name(ErrorKind::ResourceCap);
    case AP_INTERNAL: return error_kind_name(ErrorKind::Internal);
  }
  return "Unknown";
}

const char* ap_last_error(void) { return last_error.c_str(); }

void ap_string_free(char* s) { delete[] s; }

ap_status ap_instance_new(const int64_t* populations, size_t n, int64_t house, ap_instance** out) {
  return guarded([&] {
    require(out, "output pointer");
    if (n) require(populations, "populations");
    std::vector<std::int64_t> p(populations, populations + n);
    *out = new ap_instance{Instance(std::move(p), house)};
  });
}

ap_status ap_instance_from_json(const char* text_json, ap_instance** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new ap_instance{io::instance_from(io::parse_text(text(text_json, "json")))};
  });
}

ap_status ap_instance_to_json(const ap_instance* inst, char** out) {
  return guarded([&] { emit(io::instance_to(deref(inst)), out); });
}

void ap_instance_free(ap_instance* inst) { delete inst; }

size_t ap_instance_size(const ap_instance* inst) { return inst ? inst->inst.size() : 0; }

int64_t ap_instance_house(const ap_instance* inst) { return inst ? inst->inst.house() : 0; }

ap_status ap_apportion_stationary(const ap_instance* inst, const char* delta, char** out) {
  return guarded([&] {
    emit(io::outcome_to(apportion_stationary(deref(inst), Rat::parse(text(delta, "delta")))), out);
  });
}

ap_status ap_apportion_power_mean(const ap_instance* inst, const char* q, char** out) {
  return guarded([&] {
    emit(io::outcome_to(apportion_power_mean(deref(inst), PowerMeanParam::parse(text(q, "q")))), out);
  });
}

ap_status ap_apportion_hamilton(const ap_instance* inst, char** out) {
  return guarded([&] { emit(io::outcome_to(apportion_hamilton(deref(inst))), out); });
}

ap_status ap_check_axioms(const ap_instance* inst, const int64_t* seats, size_t n, char** out) {
  return guarded([&] {
    if (n) require(seats, "seats");
    AxiomReport r = check_axioms(Seats(seats, seats + n), deref(inst));
    emit(json{{"lower_quota", r.lower_quota},
              {"upper_quota", r.upper_quota},
              {"lower_violations", r.lower_violations},
              {"upper_violations", r.upper_violations}},
         out);
  });
}

ap_status ap_atlas_new(const ap_instance* inst, ap_atlas** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new ap_atlas{breakpoint_atlas(deref(inst))};
  });
}

ap_status ap_atlas_to_json(const ap_atlas* atlas, char** out) {
  return guarded([&] {
    require(atlas, "atlas");
    emit(io::atlas_to(atlas->atlas), out);
  });
}

ap_status ap_atlas_outcome_at(const ap_atlas* atlas, const char* delta, char** out) {
  return guarded([&] {
    require(atlas, "atlas");
    emit(io::outcome_to(atlas->atlas.outcome_at(Rat::parse(text(delta, "delta")))), out);
  });
}

void ap_atlas_free(ap_atlas* atlas) { delete atlas; }

ap_status ap_quota_partition(const ap_instance* inst, char** out) {
  return guarded([&] { emit(io::quota_partition_to(quota_partition(deref(inst))), out); });
}

ap_status ap_sweep_level(const ap_instance* inst, char** out) {
  return guarded([&] {
    LevelSweep s = sweep_level(deref(inst));
    json active = json::array();
    for (const auto& l : s.active) active.push_back(json::array({l.state, l.offset}));
    json pieces = json::array();
    for (const auto& p : s.pieces)
      pieces.push_back(json{{"lo", p.lo.str()}, {"hi", p.hi.str()}, {"state", p.line.state}, {"offset", p.line.offset}});
    emit(json{{"active", active}, {"pieces", pieces}, {"events", io::rats_to(s.events)}}, out);
  });
}

ap_status ap_power_mean_breakpoints(const ap_instance* inst, const char* q_lo, const char* q_hi, const char* tol,
                                    char** out) {
  return guarded([&] {
    auto segs = power_mean_breakpoints(deref(inst), PowerMeanParam::parse(text(q_lo, "q_lo")),
                                       PowerMeanParam::parse(text(q_hi, "q_hi")), Rat::parse(text(tol, "tol")));
    emit(io::segments_to(segs), out);
  });
}

ap_status ap_expected(const ap_instance* inst, const char* dist_json, const char* tiebreak, char** out) {
  return guarded([&] {
    const Instance& in = deref(inst);
    DeltaDistribution g = io::distribution_from(io::parse_text(text(dist_json, "distribution")));
    std::vector<Rat> e = expected_apportionment(in, g, io::tiebreak_from(text(tiebreak, "tiebreak")));
    std::vector<Rat> q = quotas(in);
    Rat worst;
    for (std::size_t i = 0; i < e.size(); ++i) worst = max(worst, abs(e[i] - q[i]));
    json bounds{{"max_deviation", worst.str()}};
    if (g.mean() == Rat(1, 2)) {
      FixedPopReport r = fixed_pop_bound_check(in, g);
      bounds["population_ratio"] = io::rats_to(r.bound);
      bounds["population_ratio_holds"] = r.holds;
    }
    emit(json{{"expected", io::rats_to(e)}, {"quota", io::rats_to(q)}, {"bounds", bounds}}, out);
  });
}

ap_status ap_sample_stationary(const ap_instance* inst, const char* dist_json, const char* tiebreak, uint64_t seed,
                               size_t reps, char** out) {
  return guarded([&] {
    DeltaDistribution g = io::distribution_from(io::parse_text(text(dist_json, "distribution")));
    TieBreak b = io::tiebreak_from(text(tiebreak, "tiebreak"));
    emit(samples_to(sample_randomized_divisor_batch(deref(inst), g, b, seed, reps)), out);
  });
}

ap_status ap_sample_fixed_divisor(const ap_instance* inst, uint64_t seed, size_t reps, int paired,
                                  const char* shifts_json, char** out) {
  return guarded([&] {
    const Instance& in = deref(inst);
    if (shifts_json) {
      ShiftVector s{io::shifts_from(io::parse_text(shifts_json))};
      emit(samples_to(std::vector<Seats>(reps ? 1 : 0, apportion_fixed_divisor(in, s))), out);
      return;
    }
    emit(samples_to(sample_fixed_divisor_batch(in, seed, reps, paired != 0)), out);
  });
}

ap_status ap_hm_enumerate(const ap_instance* inst, int64_t house, const ap_limits* limits, int by_recursion,
                          char** out) {
  return guarded([&] {
    FlowLimits l = limits_of(limits);
    auto found = by_recursion ? enumerate_hm_quota_by_recursion(deref(inst), house, l)
                              : enumerate_hm_quota(deref(inst), house, l);
    emit(json(found), out);
  });
}

ap_status ap_hm_phi(const ap_instance* inst, int64_t house, const ap_limits* limits, char** out) {
  return guarded([&] { emit(json{{"phi", phi(deref(inst), house, limits_of(limits)).values}}, out); });
}

ap_status ap_decomposition_new(const ap_instance* inst, const ap_limits* limits, ap_decomposition** out) {
  return guarded([&] {
    require(out, "output pointer");
    *out = new ap_decomposition{decompose_quota(deref(inst), limits_of(limits))};
  });
}

ap_status ap_decomposition_to_json(const ap_decomposition* dec, char** out) {
  return guarded([&] {
    require(dec, "decomposition");
    emit(io::decomposition_to(dec->dec), out);
  });
}

void ap_decomposition_free(ap_decomposition* dec) { delete dec; }

ap_status ap_hm_sample(const ap_instance* inst, const ap_decomposition* dec, int64_t house, uint64_t seed,
                       char** out) {
  return guarded([&] {
    const Instance& in = deref(inst);
    Seats x = dec ? sample_hm_method(in, dec->dec, house, seed) : sample_hm_method(in, house, seed);
    emit(json(x), out);
  });
}

ap_status ap_gen_adversary_stationary(int64_t house, const char* delta, const char* eps, char** out) {
  return guarded([&] {
    emit(io::instance_to(adversary_stationary(house, Rat::parse(text(delta, "delta")), Rat::parse(text(eps, "eps")))),
         out);
  });
}

ap_status ap_gen_adversary_fixed_divisor(const char* signposts_json, const char* eps, char** out) {
  return guarded([&] {
    std::vector<Rat> d = io::shifts_from(io::parse_text(text(signposts_json, "signposts")));
    emit(io::instance_to(adversary_fixed_divisor(d, Rat::parse(text(eps, "eps")))), out);
  });
}

ap_status ap_gen_from_arrangement(const char* spec_json, int64_t k, char** out) {
  return guarded([&] {
    ArrangementSpec spec = io::arrangement_from(io::parse_text(text(spec_json, "arrangement")));
    emit(io::arrangement_instance_to(instance_from_arrangement(spec, k)), out);
  });
}

}  // extern "C"

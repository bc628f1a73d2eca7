#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "apportion/apportion.h"

namespace {

using nlohmann::json;

struct Failure {
  ap_status status;
  std::string detail;
};

int exit_code(ap_status s) {
  switch (s) {
    case AP_OK: return 0;
    case AP_RESOURCE_CAP: return 3;
    case AP_INTERNAL: return 1;
    default: return 2;
  }
}

void check(ap_status s) {
  if (s != AP_OK) throw Failure{s, ap_last_error()};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{AP_INVALID_ARGUMENT, "cannot read " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct InstanceDeleter {
  void operator()(ap_instance* p) const { ap_instance_free(p); }
};
using InstancePtr = std::unique_ptr<ap_instance, InstanceDeleter>;

InstancePtr load_instance(const std::string& path, std::int64_t house_override) {
  if (path.empty()) throw Failure{AP_INVALID_ARGUMENT, "--instance is required"};
  json j;
  try {
    j = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Failure{AP_PARSE, e.what()};
  }
  if (house_override > 0 && j.is_object()) j["house"] = house_override;
  ap_instance* raw = nullptr;
  check(ap_instance_from_json(j.dump().c_str(), &raw));
  return InstancePtr(raw);
}

// Takes ownership of a string produced by the library.
std::string take(char* s) {
  std::string out(s);
  ap_string_free(s);
  return out;
}

std::string list_json(const std::string& csv) {
  json arr = json::array();
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) arr.push_back(item);
  return arr.dump();
}

struct Options {
  std::string instance;
  std::string out = "stdout";
  std::string format = "json";
  std::uint64_t seed = 0;
  std::string method;
  std::string delta = "1/2";
  std::string q = "1";
  std::string g;
  std::string tiebreak = "uniform";
  std::size_t reps = 1;
  std::int64_t house = 0;
  std::size_t max_nodes = 0;
  std::int64_t max_horizon = 0;
  std::int64_t k = 0;
  std::string spec;
  std::string eps = "1/2";
  std::string shifts;
  std::string kind = "stationary";
  std::string signposts;
  std::string q_lo, q_hi, tol = "1/1000";
  bool iid = false;
  bool recursion = false;
};

std::string method_delta(const std::string& m) {
  if (m == "adams") return "0";
  if (m == "webster") return "1/2";
  if (m == "jefferson") return "1";
  return "";
}

std::string method_q(const std::string& m) {
  if (m == "dean") return "-1";
  if (m == "hill") return "0";
  return "";
}

std::string run_apportion(const Options& o) {
  auto inst = load_instance(o.instance, o.house);
  char* s = nullptr;
  const std::string m = o.method.empty() ? "stationary" : o.method;
  if (m == "hamilton") {
    check(ap_apportion_hamilton(inst.get(), &s));
  } else if (m == "power-mean" || !method_q(m).empty()) {
    std::string q = m == "power-mean" ? o.q : method_q(m);
    check(ap_apportion_power_mean(inst.get(), q.c_str(), &s));
  } else if (m == "stationary" || !method_delta(m).empty()) {
    std::string d = m == "stationary" ? o.delta : method_delta(m);
    check(ap_apportion_stationary(inst.get(), d.c_str(), &s));
  } else {
    throw Failure{AP_INVALID_ARGUMENT, "unknown method \"" + m + "\""};
  }
  return take(s);
}

std::string run_atlas(const Options& o) {
  auto inst = load_instance(o.instance, o.house);
  char* s = nullptr;
  if (o.method == "power-mean") {
    std::string lo = o.q_lo.empty() ? "-inf" : o.q_lo;
    std::string hi = o.q_hi.empty() ? "+inf" : o.q_hi;
    check(ap_power_mean_breakpoints(inst.get(), lo.c_str(), hi.c_str(), o.tol.c_str(), &s));
    return take(s);
  }
  ap_atlas* atlas = nullptr;
  check(ap_atlas_new(inst.get(), &atlas));
  ap_status st = ap_atlas_to_json(atlas, &s);
  ap_atlas_free(atlas);
  check(st);
  return take(s);
}

std::string run_quota_partition(const Options& o) {
  auto inst = load_instance(o.instance, o.house);
  char* s = nullptr;
  check(ap_quota_partition(inst.get(), &s));
  return take(s);
}

std::string distribution_text(const Options& o) {
  if (o.g.empty()) throw Failure{AP_INVALID_ARGUMENT, "--g is required"};
  return read_file(o.g);
}

std::string run_expect(const Options& o) {
  auto inst = load_instance(o.instance, o.house);
  char* s = nullptr;
  check(ap_expected(inst.get(), distribution_text(o).c_str(), o.tiebreak.c_str(), &s));
  return take(s);
}

std::string run_sample(const Options& o) {
  auto inst = load_instance(o.instance, o.house);
  char* s = nullptr;
  const std::string m = o.method.empty() ? "stationary" : o.method;
  if (m == "stationary") {
    check(ap_sample_stationary(inst.get(), distribution_text(o).c_str(), o.tiebreak.c_str(), o.seed, o.reps, &s));
  } else if (m == "fixed-divisor") {
    std::string shifts = o.shifts.empty() ? "" : list_json(o.shifts);
    check(ap_sample_fixed_divisor(inst.get(), o.seed, o.reps, o.iid ? 0 : 1,
                                  shifts.empty() ? nullptr : shifts.c_str(), &s));
  } else {
    throw Failure{AP_INVALID_ARGUMENT, "unknown sampling method \"" + m + "\""};
  }
  return take(s);
}

ap_limits limits_of(const Options& o) { return ap_limits{o.max_nodes, o.max_horizon}; }

std::int64_t hm_house(const Options& o, const ap_instance* inst) {
  return o.house > 0 ? o.house : ap_instance_house(inst);
}

std::string run_hm(const std::string& sub, const Options& o) {
  auto inst = load_instance(o.instance, 0);
  ap_limits lim = limits_of(o);
  const std::int64_t H = hm_house(o, inst.get());
  char* s = nullptr;
  if (sub == "enumerate") {
    check(ap_hm_enumerate(inst.get(), H, &lim, o.recursion ? 1 : 0, &s));
  } else if (sub == "phi") {
    check(ap_hm_phi(inst.get(), H, &lim, &s));
  } else if (sub == "decompose" || sub == "sample") {
    ap_decomposition* dec = nullptr;
    check(ap_decomposition_new(inst.get(), &lim, &dec));
    ap_status st = sub == "decompose" ? ap_decomposition_to_json(dec, &s) : ap_hm_sample(inst.get(), dec, H, o.seed, &s);
    ap_decomposition_free(dec);
    check(st);
  }
  return take(s);
}

std::string run_gen_adversary(const Options& o) {
  char* s = nullptr;
  if (o.kind == "stationary") {
    check(ap_gen_adversary_stationary(o.house, o.delta.c_str(), o.eps.c_str(), &s));
  } else if (o.kind == "fixed-divisor") {
    if (o.signposts.empty()) throw Failure{AP_INVALID_ARGUMENT, "--signposts is required"};
    check(ap_gen_adversary_fixed_divisor(list_json(o.signposts).c_str(), o.eps.c_str(), &s));
  } else {
    throw Failure{AP_INVALID_ARGUMENT, "unknown adversary kind \"" + o.kind + "\""};
  }
  return take(s);
}

std::string run_gen_from_arrangement(const Options& o) {
  if (o.spec.empty()) throw Failure{AP_INVALID_ARGUMENT, "--spec is required"};
  char* s = nullptr;
  check(ap_gen_from_arrangement(read_file(o.spec).c_str(), o.k, &s));
  return take(s);
}

void write_output(const Options& o, const std::string& body) {
  if (o.out.empty() || o.out == "stdout" || o.out == "-") {
    std::cout << body << '\n';
    return;
  }
  std::ofstream f(o.out);
  if (!f) throw Failure{AP_INVALID_ARGUMENT, "cannot write " + o.out};
  f << body << '\n';
}

int report(ap_status status, const std::string& detail) {
  json err{{"error", {{"kind", ap_status_name(status)}, {"detail", detail}}}};
  std::cerr << err.dump() << '\n';
  return exit_code(status);
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact apportionment toolkit"};
  app.require_subcommand(1);

  auto common = [&](CLI::App* c) {
    c->add_option("--instance", o.instance, "Instance JSON file");
    c->add_option("--out", o.out, "Output path or stdout");
    c->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json"}));
    c->add_option("--seed", o.seed, "Random seed");
    c->add_option("--house", o.house, "Override the house size");
  };

  auto* ap = app.add_subcommand("apportion", "Apportion one instance");
  common(ap);
  ap->add_option("--method", o.method,
                 "stationary, power-mean, hamilton, adams, webster, jefferson, dean or hill");
  ap->add_option("--delta", o.delta, "Rounding threshold in [0,1]");
  ap->add_option("--q", o.q, "Power-mean exponent: rational, -inf or +inf");

  auto* atlas = app.add_subcommand("atlas", "Breakpoints and outcomes over delta in [0,1]");
  common(atlas);
  atlas->add_option("--method", o.method, "stationary (default) or power-mean");
  atlas->add_option("--q-lo", o.q_lo, "Lower exponent for power-mean");
  atlas->add_option("--q-hi", o.q_hi, "Upper exponent for power-mean");
  atlas->add_option("--tol", o.tol, "Bracket width for power-mean breakpoints");

  auto* qp = app.add_subcommand("quota-partition", "Delta ranges where lower and upper quota hold");
  common(qp);

  auto* ex = app.add_subcommand("expect", "Exact expected seats under a random delta");
  common(ex);
  ex->add_option("--g", o.g, "Distribution JSON file");
  ex->add_option("--tiebreak", o.tiebreak, "uniform, lexmax, lexmin or random");

  auto* sa = app.add_subcommand("sample", "Seeded draws of a randomized method");
  common(sa);
  sa->add_option("--method", o.method, "stationary or fixed-divisor");
  sa->add_option("--g", o.g, "Distribution JSON file");
  sa->add_option("--tiebreak", o.tiebreak, "uniform, lexmax, lexmin or random");
  sa->add_option("--reps", o.reps, "Number of draws");
  sa->add_option("--shifts", o.shifts, "Comma-separated shifts for a single fixed-divisor draw");
  sa->add_flag("--iid", o.iid, "Independent shifts instead of pairs");

  auto* hm = app.add_subcommand("hm", "House-monotone quota methods");
  hm->require_subcommand(1);
  std::string hm_sub;
  for (const char* name : {"enumerate", "phi", "decompose", "sample"}) {
    auto* c = hm->add_subcommand(name);
    common(c);
    c->add_option("--max-nodes", o.max_nodes, "Search node cap");
    c->add_option("--max-horizon", o.max_horizon, "Horizon cap");
    if (std::string(name) == "enumerate") c->add_flag("--recursion", o.recursion, "Use the seat-by-seat recursion");
    c->callback([&hm_sub, name] { hm_sub = name; });
  }

  auto* ga = app.add_subcommand("gen-adversary", "Instances far from quota");
  common(ga);
  ga->add_option("--kind", o.kind, "stationary or fixed-divisor");
  ga->add_option("--delta", o.delta, "Rounding threshold");
  ga->add_option("--eps", o.eps, "Slack");
  ga->add_option("--signposts", o.signposts, "Comma-separated first signposts");

  auto* gf = app.add_subcommand("gen-from-arrangement", "Instance tracing the k-level of a line arrangement");
  common(gf);
  gf->add_option("--spec", o.spec, "Arrangement JSON file");
  gf->add_option("--k", o.k, "Level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return report(AP_INVALID_ARGUMENT, e.what());
  }

  try {
    std::string body;
    if (ap->parsed()) body = run_apportion(o);
    else if (atlas->parsed()) body = run_atlas(o);
    else if (qp->parsed()) body = run_quota_partition(o);
    else if (ex->parsed()) body = run_expect(o);
    else if (sa->parsed()) body = run_sample(o);
    else if (hm->parsed()) body = run_hm(hm_sub, o);
    else if (ga->parsed()) body = run_gen_adversary(o);
    else if (gf->parsed()) body = run_gen_from_arrangement(o);
    write_output(o, body);
  } catch (const Failure& f) {
    return report(f.status, f.detail);
  }
  return 0;
}

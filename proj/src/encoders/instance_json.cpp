#include "hubo/encoders/instance_json.hpp"

#include <fstream>

namespace hubo {

namespace {

std::string join(const std::string& base, const std::string& key) {
  return base.empty() ? key : base + "." + key;
}

std::string index(const std::string& base, std::size_t i) {
  return base + "[" + std::to_string(i) + "]";
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ValidationError(path, "expected a number");
  return j.get<double>();
}

long as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ValidationError(path, "expected an integer");
  return j.get<long>();
}

std::size_t as_count(const Json& j, const std::string& path) {
  const long v = as_int(j, path);
  if (v < 0) throw ValidationError(path, "must be nonnegative");
  return static_cast<std::size_t>(v);
}

const Json& require(const Json& j, const std::string& key, const std::string& base) {
  if (!j.is_object()) throw ValidationError(base.empty() ? "<root>" : base, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ValidationError(join(base, key), "missing field");
  return *it;
}

const Json* optional_field(const Json& j, const std::string& key) {
  auto it = j.find(key);
  return it == j.end() || it->is_null() ? nullptr : &*it;
}

std::optional<double> optional_number(const Json& j, const std::string& key,
                                      const std::string& base) {
  if (const Json* v = optional_field(j, key)) return as_number(*v, join(base, key));
  return std::nullopt;
}

const Json& as_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ValidationError(path, "expected an array");
  return j;
}

std::vector<double> number_list(const Json& j, const std::string& path) {
  std::vector<double> out;
  const Json& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(as_number(a[i], index(path, i)));
  return out;
}

Matrix matrix(const Json& j, const std::string& path) {
  Matrix out;
  const Json& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(number_list(a[i], index(path, i)));
  return out;
}

std::vector<std::uint8_t> bit_list(const Json& j, const std::string& path) {
  std::vector<std::uint8_t> out;
  const Json& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const long v = as_int(a[i], index(path, i));
    if (v != 0 && v != 1) throw ValidationError(index(path, i), "expected 0 or 1");
    out.push_back(static_cast<std::uint8_t>(v));
  }
  return out;
}

std::string as_string(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ValidationError(path, "expected a string");
  return j.get<std::string>();
}

std::vector<QuestVehicle> vehicles(const Json& j, const std::string& path,
                                   std::vector<double>* dt_thr, std::vector<double>* dv_thr) {
  std::vector<QuestVehicle> out;
  const Json& a = as_array(j, path);
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::string at = index(path, i);
    QuestVehicle v;
    v.size_class = static_cast<int>(as_int(require(a[i], "size_class", at), join(at, "size_class")));
    v.speed = as_number(require(a[i], "speed", at), join(at, "speed"));
    out.push_back(v);
    if (dt_thr) dt_thr->push_back(optional_number(a[i], "dt_threshold", at).value_or(0.0));
    if (dv_thr) dv_thr->push_back(optional_number(a[i], "dv_threshold", at).value_or(0.0));
  }
  return out;
}

}  // namespace

QuestInstance quest_from_json(const Json& j) {
  if (!j.is_object()) throw ValidationError("<root>", "expected an object");
  QuestInstance q;
  if (const Json* w = optional_field(j, "omega")) q.omega = matrix(*w, "omega");
  if (const Json* b = optional_field(j, "breakers")) q.breakers = vehicles(*b, "breakers", nullptr, nullptr);
  if (const Json* s = optional_field(j, "surfers")) {
    q.surfers = vehicles(*s, "surfers", &q.dt_threshold, &q.dv_threshold);
  }
  if (!q.omega && (q.breakers.empty() || q.surfers.empty())) {
    throw ValidationError("breakers", "either omega or both vehicle lists are required");
  }
  if (const Json* m = optional_field(j, "dt")) q.dt = matrix(*m, "dt");
  if (const Json* m = optional_field(j, "dv")) q.dv = matrix(*m, "dv");
  q.lambda1 = optional_number(j, "lambda1", "").value_or(1.0);
  q.lambda2 = optional_number(j, "lambda2", "").value_or(1.0);
  q.lambda_valid = optional_number(j, "lambda_valid", "");
  q.lambda_unique = optional_number(j, "lambda_unique", "");
  validate(q);
  return q;
}

CvrpInstance cvrp_from_json(const Json& j) {
  CvrpInstance c;
  c.nodes = as_count(require(j, "nodes", ""), "nodes");
  c.vehicles = as_count(require(j, "vehicles", ""), "vehicles");
  c.slots = as_count(require(j, "slots", ""), "slots");
  c.cost = matrix(require(j, "cost", ""), "cost");
  c.demand = number_list(require(j, "demand", ""), "demand");
  c.capacity = as_number(require(j, "capacity", ""), "capacity");
  c.lambda_visit = optional_number(j, "lambda_visit", "");
  c.lambda_mono = optional_number(j, "lambda_mono", "");
  c.lambda_valid = optional_number(j, "lambda_valid", "");
  c.lambda_cap = optional_number(j, "lambda_cap", "");
  validate(c);
  return c;
}

SchedulingInstance scheduling_from_json(const Json& j) {
  SchedulingInstance s;
  s.slots = as_count(require(j, "slots", ""), "slots");

  if (const Json* cs = optional_field(j, "criteria")) {
    as_array(*cs, "criteria");
    for (std::size_t i = 0; i < cs->size(); ++i) {
      const std::string at = index("criteria", i);
      const Json& cj = (*cs)[i];
      Criterion c;
      c.name = as_string(require(cj, "name", at), join(at, "name"));
      if (const Json* lane = optional_field(cj, "lane")) {
        if (!lane->is_boolean()) throw ValidationError(join(at, "lane"), "expected a boolean");
        c.lane = lane->get<bool>();
      }
      if (const Json* g = optional_field(cj, "gap")) {
        const std::string gp = join(at, "gap");
        const std::string kind = as_string(require(*g, "kind", gp), join(gp, "kind"));
        if (kind != "exact" && kind != "atleast") {
          throw ValidationError(join(gp, "kind"), "expected 'exact' or 'atleast'");
        }
        c.gap = GapRule{kind == "exact" ? GapKind::kExact : GapKind::kAtLeast,
                        static_cast<int>(as_int(require(*g, "d", gp), join(gp, "d")))};
      }
      if (const Json* g = optional_field(cj, "group")) {
        const std::string gp = join(at, "group");
        const std::string kind = as_string(require(*g, "kind", gp), join(gp, "kind"));
        if (kind != "exact" && kind != "atmost") {
          throw ValidationError(join(gp, "kind"), "expected 'exact' or 'atmost'");
        }
        c.group = GroupRule{kind == "exact" ? GroupKind::kExact : GroupKind::kAtMost,
                            static_cast<int>(as_int(require(*g, "size", gp), join(gp, "size")))};
      }
      if (const Json* h = optional_field(cj, "history")) c.history = bit_list(*h, join(at, "history"));
      s.criteria.push_back(std::move(c));
    }
  }

  const Json& jobs = as_array(require(j, "jobs", ""), "jobs");
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const std::string at = index("jobs", i);
    s.sequence.push_back(as_number(require(jobs[i], "seq", at), join(at, "seq")));
    std::vector<std::uint8_t> row(s.criteria.size(), 0);
    if (const Json* names = optional_field(jobs[i], "criteria")) {
      const std::string cp = join(at, "criteria");
      as_array(*names, cp);
      for (std::size_t k = 0; k < names->size(); ++k) {
        const std::string name = as_string((*names)[k], index(cp, k));
        auto it = std::find_if(s.criteria.begin(), s.criteria.end(),
                               [&](const Criterion& c) { return c.name == name; });
        if (it == s.criteria.end()) throw ValidationError(index(cp, k), "unknown criterion '" + name + "'");
        row[static_cast<std::size_t>(it - s.criteria.begin())] = 1;
      }
    }
    s.membership.push_back(std::move(row));
  }

  if (const Json* f = optional_field(j, "fifo")) {
    s.step_threshold = optional_number(*f, "step_threshold", "fifo");
    s.span_threshold = optional_number(*f, "span_threshold", "fifo");
    s.previous_sequence = optional_number(*f, "previous_seq", "fifo");
  }
  if (const Json* w = optional_field(j, "weights")) {
    auto& sw = s.weights;
    sw.slot = optional_number(*w, "slot", "weights");
    sw.job = optional_number(*w, "job", "weights");
    sw.link = optional_number(*w, "link", "weights");
    sw.lane = optional_number(*w, "lane", "weights");
    sw.gap = optional_number(*w, "gap", "weights").value_or(sw.gap);
    sw.grp = optional_number(*w, "grp", "weights").value_or(sw.grp);
    sw.under = optional_number(*w, "under", "weights").value_or(sw.under);
    sw.over = optional_number(*w, "over", "weights").value_or(sw.over);
    sw.short_gap = optional_number(*w, "short", "weights").value_or(sw.short_gap);
    sw.long_gap = optional_number(*w, "long", "weights").value_or(sw.long_gap);
    sw.down = optional_number(*w, "down", "weights").value_or(sw.down);
    sw.step = optional_number(*w, "step", "weights").value_or(sw.step);
    sw.span = optional_number(*w, "span", "weights").value_or(sw.span);
  }
  validate(s);
  return s;
}

Json to_json(const QuestInstance& q) {
  Json j;
  j["use_case"] = "quest";
  if (q.omega) j["omega"] = *q.omega;
  auto vehicles_json = [](const std::vector<QuestVehicle>& vs, const std::vector<double>* dt,
                          const std::vector<double>* dv) {
    Json a = Json::array();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      Json v{{"size_class", vs[i].size_class}, {"speed", vs[i].speed}};
      if (dt && !dt->empty()) v["dt_threshold"] = (*dt)[i];
      if (dv && !dv->empty()) v["dv_threshold"] = (*dv)[i];
      a.push_back(v);
    }
    return a;
  };
  if (!q.breakers.empty()) j["breakers"] = vehicles_json(q.breakers, nullptr, nullptr);
  if (!q.surfers.empty()) j["surfers"] = vehicles_json(q.surfers, &q.dt_threshold, &q.dv_threshold);
  if (!q.dt.empty()) j["dt"] = q.dt;
  if (!q.dv.empty()) j["dv"] = q.dv;
  j["lambda1"] = q.lambda1;
  j["lambda2"] = q.lambda2;
  if (q.lambda_valid) j["lambda_valid"] = *q.lambda_valid;
  if (q.lambda_unique) j["lambda_unique"] = *q.lambda_unique;
  return j;
}

Json to_json(const CvrpInstance& c) {
  Json j{{"use_case", "cvrp"},        {"nodes", c.nodes},   {"vehicles", c.vehicles},
         {"slots", c.slots},          {"cost", c.cost},     {"demand", c.demand},
         {"capacity", c.capacity}};
  if (c.lambda_visit) j["lambda_visit"] = *c.lambda_visit;
  if (c.lambda_mono) j["lambda_mono"] = *c.lambda_mono;
  if (c.lambda_valid) j["lambda_valid"] = *c.lambda_valid;
  if (c.lambda_cap) j["lambda_cap"] = *c.lambda_cap;
  return j;
}

Json to_json(const SchedulingInstance& s) {
  Json j;
  j["use_case"] = "scheduling";
  j["slots"] = s.slots;
  Json crit = Json::array();
  for (const auto& c : s.criteria) {
    Json cj{{"name", c.name}};
    if (c.lane) cj["lane"] = true;
    if (c.gap) {
      cj["gap"] = {{"kind", c.gap->kind == GapKind::kExact ? "exact" : "atleast"},
                   {"d", c.gap->distance}};
    }
    if (c.group) {
      cj["group"] = {{"kind", c.group->kind == GroupKind::kExact ? "exact" : "atmost"},
                     {"size", c.group->size}};
    }
    if (!c.history.empty()) cj["history"] = c.history;
    crit.push_back(cj);
  }
  j["criteria"] = crit;
  Json jobs = Json::array();
  for (std::size_t i = 0; i < s.num_jobs(); ++i) {
    Json names = Json::array();
    for (std::size_t c = 0; c < s.criteria.size(); ++c) {
      if (s.membership[i][c]) names.push_back(s.criteria[c].name);
    }
    jobs.push_back({{"seq", s.sequence[i]}, {"criteria", names}});
  }
  j["jobs"] = jobs;
  Json fifo = Json::object();
  if (s.step_threshold) fifo["step_threshold"] = *s.step_threshold;
  if (s.span_threshold) fifo["span_threshold"] = *s.span_threshold;
  if (s.previous_sequence) fifo["previous_seq"] = *s.previous_sequence;
  if (!fifo.empty()) j["fifo"] = fifo;
  const auto& w = s.weights;
  Json wj{{"gap", w.gap},   {"grp", w.grp},         {"under", w.under}, {"over", w.over},
          {"short", w.short_gap}, {"long", w.long_gap}, {"down", w.down}, {"step", w.step},
          {"span", w.span}};
  if (w.slot) wj["slot"] = *w.slot;
  if (w.job) wj["job"] = *w.job;
  if (w.link) wj["link"] = *w.link;
  if (w.lane) wj["lane"] = *w.lane;
  j["weights"] = wj;
  return j;
}

Json to_json(const ViolationReport& r) {
  Json breakdown = Json::array();
  for (const auto& b : r.breakdown) {
    breakdown.push_back(
        {{"criterion", b.criterion}, {"rule", b.rule}, {"count", b.count}, {"severity", b.severity}});
  }
  return {{"gap_violations", r.gap_violations},
          {"group_violations", r.group_violations},
          {"lane_violations", r.lane_violations},
          {"fifo_severity", r.fifo_severity},
          {"fifo_down_events", r.fifo_down_events},
          {"fifo_step_events", r.fifo_step_events},
          {"fifo_span_exceeded", r.fifo_span_exceeded},
          {"breakdown", breakdown}};
}

Json to_json(const DecodedSolution& d) {
  Json j;
  j["feasible"] = d.feasible;
  j["hard_violations"] = d.hard_violations;
  j["objective"] = d.objective;
  if (d.energy) j["energy"] = *d.energy;
  if (d.soft) j["violations"] = to_json(*d.soft);
  if (const auto* q = std::get_if<QuestAssignment>(&d.payload)) {
    j["surfer_of_breaker"] = q->surfer_of_breaker;
  } else if (const auto* c = std::get_if<CvrpRoutes>(&d.payload)) {
    j["slot_labels"] = c->slot_labels;
    j["routes"] = c->routes;
    j["loads"] = c->loads;
    j["encoded_cost"] = c->encoded_cost;
    j["closed_cost"] = c->closed_cost;
  } else if (const auto* s = std::get_if<ScheduleAssignment>(&d.payload)) {
    j["job_at_slot"] = s->job_at_slot;
    j["lane_at_slot"] = s->lane_at_slot;
  }
  return j;
}

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw ValidationError(path, e.what());
  }
}

std::optional<UseCase> declared_use_case(const Json& j) {
  if (!j.is_object()) return std::nullopt;
  if (const Json* u = optional_field(j, "use_case")) return parse_use_case(as_string(*u, "use_case"));
  return std::nullopt;
}

EncodedProblem build_from_json(UseCase u, const Json& j) {
  switch (u) {
    case UseCase::kQuest: return build_quest(quest_from_json(j));
    case UseCase::kCvrp: return build_cvrp(cvrp_from_json(j));
    case UseCase::kScheduling: return build_scheduling(scheduling_from_json(j));
  }
  throw std::logic_error("unreachable");
}

DecodedSolution decode(const EncodedProblem& ep, const BitString& s) {
  switch (ep.use_case) {
    case UseCase::kQuest: return decode_quest(ep, s);
    case UseCase::kCvrp: return decode_cvrp(ep, s);
    case UseCase::kScheduling: return decode_scheduling(ep, s);
  }
  throw std::logic_error("unreachable");
}

}  // namespace hubo

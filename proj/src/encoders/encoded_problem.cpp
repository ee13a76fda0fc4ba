#include "hubo/encoders/encoded_problem.hpp"

#include <algorithm>

#include "hubo/encoders/scheduling.hpp"

namespace hubo {

std::string to_string(UseCase u) {
  switch (u) {
    case UseCase::kQuest: return "quest";
    case UseCase::kCvrp: return "cvrp";
    case UseCase::kScheduling: return "scheduling";
  }
  return "unknown";
}

UseCase parse_use_case(const std::string& s) {
  if (s == "quest") return UseCase::kQuest;
  if (s == "cvrp") return UseCase::kCvrp;
  if (s == "scheduling") return UseCase::kScheduling;
  throw ValidationError("use_case", "unknown use case '" + s + "'");
}

std::vector<VarId> CvrpLayout::slot_vars(std::size_t v, std::size_t t) const {
  std::vector<VarId> out;
  for (std::size_t k = 0; k < bits; ++k) out.push_back(var(v, t, k));
  return out;
}

std::optional<std::size_t> SchedulingLayout::x_index(std::size_t criterion) const {
  auto it = std::find(x_criteria.begin(), x_criteria.end(), criterion);
  if (it == x_criteria.end()) return std::nullopt;
  return static_cast<std::size_t>(it - x_criteria.begin());
}

std::vector<std::string> EncodedProblem::variable_names() const {
  std::vector<std::string> names(num_vars());
  auto put = [&](VarId v, std::string s) {
    if (v < names.size()) names[v] = std::move(s);
  };
  if (const auto* q = std::get_if<QuestLayout>(&layout)) {
    for (std::size_t b = 0; b < q->breakers; ++b)
      for (std::size_t k = 0; k < q->bits; ++k)
        put(q->var(b, k), "x[" + std::to_string(b) + "," + std::to_string(k) + "]");
  } else if (const auto* c = std::get_if<CvrpLayout>(&layout)) {
    for (std::size_t v = 0; v < c->vehicles; ++v)
      for (std::size_t t = 0; t < c->slots; ++t)
        for (std::size_t k = 0; k < c->bits; ++k)
          put(c->var(v, t, k), "x[" + std::to_string(v) + "," + std::to_string(t) + "," +
                                   std::to_string(k) + "]");
  } else if (const auto* s = std::get_if<SchedulingLayout>(&layout)) {
    for (std::size_t l = 1; l <= s->slots; ++l) {
      for (std::size_t j = 0; j < s->jobs; ++j)
        put(s->y(j, l), "y[" + std::to_string(j) + "," + std::to_string(l) + "]");
      for (std::size_t xi = 0; xi < s->x_criteria.size(); ++xi)
        put(s->x(xi, l), "x[" + s->instance->criteria[s->x_criteria[xi]].name + "," +
                             std::to_string(l) + "]");
    }
  }
  return names;
}

}  // namespace hubo

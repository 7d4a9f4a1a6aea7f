#include "alpha_luroth/partition_config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace alpha_luroth {

namespace {

using nlohmann::json;

Rational ratio_value(const json& v, const char* what) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<long>());
  if (v.is_number()) {
    const double d = v.get<double>();
    if (auto small = small_rational(d)) return *small;
    return from_double(d);
  }
  throw std::invalid_argument(std::string(what) + " must be a number or a \"p/q\" string");
}

double real_value(const json& v, const char* what) {
  if (v.is_string()) return to_double(parse_rational(v.get<std::string>()));
  if (v.is_number()) return v.get<double>();
  throw std::invalid_argument(std::string(what) + " must be a number or a \"p/q\" string");
}

const json& member(const json& obj, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw std::invalid_argument(std::string("missing \"") + key + "\" in partition config");
  return *it;
}

Generator generator_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("partition config must be a JSON object");
  const json& gen = member(doc, "generator");
  if (gen.is_string()) {
    const auto name = gen.get<std::string>();
    if (name == "luroth") return generator::Luroth{};
    if (name == "dyadic") return generator::Dyadic{};
    throw std::invalid_argument("unknown generator: " + name);
  }
  if (!gen.is_object()) throw std::invalid_argument("generator must be a string or an object");
  if (gen.contains("geometric")) return generator::Geometric{ratio_value(gen["geometric"], "geometric ratio")};
  if (gen.contains("two_periodic")) {
    const json& tp = gen["two_periodic"];
    return generator::TwoPeriodic{ratio_value(member(tp, "ratio"), "ratio"),
                                  ratio_value(member(tp, "even_factor"), "even_factor")};
  }
  if (gen.contains("table")) {
    const json& values = gen["table"];
    if (!values.is_array()) throw std::invalid_argument("table must be an array");
    generator::Table table;
    for (const auto& v : values) table.values.push_back(real_value(v, "table entry"));
    const json& tail = gen.contains("tail_ratio") ? gen["tail_ratio"] : member(doc, "tail_ratio");
    table.tail_ratio = real_value(tail, "tail_ratio");
    return table;
  }
  throw std::invalid_argument("unknown generator object");
}

std::pair<std::string_view, std::string_view> split_at(std::string_view s, char c) {
  const auto pos = s.find(c);
  if (pos == std::string_view::npos) return {s, {}};
  return {s.substr(0, pos), s.substr(pos + 1)};
}

}  // namespace

Partition partition_from_json(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("malformed partition JSON: ") + e.what());
  }
  return Partition(generator_from_json(doc));
}

Partition parse_partition(std::string_view spec) {
  if (spec == "luroth") return Partition(generator::Luroth{});
  if (spec == "dyadic") return Partition(generator::Dyadic{});
  const auto [head, rest] = split_at(spec, ':');
  if (head == "geometric" && !rest.empty()) return Partition(generator::Geometric{parse_rational(rest)});
  if (head == "two-periodic" && !rest.empty()) {
    const auto [r, c] = split_at(rest, ',');
    if (c.empty()) throw std::invalid_argument("two-periodic needs RATIO,EVEN_FACTOR");
    return Partition(generator::TwoPeriodic{parse_rational(r), parse_rational(c)});
  }
  if (!spec.empty() && spec.front() == '{') return partition_from_json(spec);
  std::ifstream in{std::string(spec)};
  if (!in) throw std::invalid_argument("unknown partition or unreadable file: " + std::string(spec));
  std::ostringstream text;
  text << in.rdbuf();
  return partition_from_json(text.str());
}

}  // namespace alpha_luroth

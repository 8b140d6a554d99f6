#include "evlab/corpus.hpp"

#include <algorithm>
#include <numeric>

#include "evlab/errors.hpp"
#include "evlab/model_io.hpp"
#include "evlab/translate.hpp"

namespace evlab {

namespace {

/// Grid point i at k points per minute: integer minutes keep their plain
/// decimal name, finer points fall back to the grid index.
std::string minute_label(std::size_t i, std::size_t k) {
  return i % k == 0 ? std::to_string(i / k) : "g" + std::to_string(i);
}

std::size_t check_resolution(std::size_t resolution) {
  if (resolution < 60 || resolution % 60 != 0)
    throw Error("clock resolution must be at least 60 and divisible by 60");
  return resolution / 60;
}

bool mu_equals(const Mu& m, long long num, long long den) {
  return m.num == num && m.den == den;
}

}  // namespace

Mu parse_mu(const std::string& text) {
  std::size_t dot = text.find('.');
  const std::string whole = text.substr(0, dot);
  if (dot == std::string::npos || (!whole.empty() && whole != "0"))
    throw Error("precision level '" + text +
                "' must be a decimal in (0,1), like 0.3");
  const std::string digits = text.substr(dot + 1);
  if (digits.empty() || digits.size() > 9 ||
      digits.find_first_not_of("0123456789") != std::string::npos)
    throw Error("precision level '" + text +
                "' must be a decimal in (0,1), like 0.3");
  long long num = 0, den = 1;
  for (char c : digits) {
    num = num * 10 + (c - '0');
    den *= 10;
  }
  if (num == 0) throw Error("precision level must be strictly above 0");
  std::string trimmed = digits;
  while (trimmed.size() > 1 && trimmed.back() == '0') {
    trimmed.pop_back();
    num /= 10;
    den /= 10;
  }
  const long long g = std::gcd(num, den);
  return Mu{num / g, den / g, "0." + trimmed};
}

const std::vector<Mu>& default_mu_grid() {
  static const std::vector<Mu> grid = [] {
    std::vector<Mu> g;
    for (int d = 1; d <= 9; ++d) g.push_back(parse_mu("0." + std::to_string(d)));
    return g;
  }();
  return grid;
}

EvidenceModel clock_example1(std::size_t resolution) {
  const std::size_t k = check_resolution(resolution);
  const std::size_t R = resolution;
  EvidenceModel::Builder b;
  for (std::size_t i = 0; i < R; ++i) b.add_world(minute_label(i, k));
  b.add_evidence("e");
  for (std::size_t i = 0; i < R; ++i) {
    if (i == 0 || 2 * i >= R) continue;  // c ∉ (0,30): evidence is empty
    WorldSet w(R);
    // j is strictly inside (c/2, (c+30)/2), scaled by the grid: the
    // bounds j > i/2 and j < (i + R/2)/2 become the integer tests below.
    for (std::size_t j = 0; j < R; ++j)
      if (i < 2 * j && 4 * j < 2 * i + R) w.set(j);
    b.interp(0, i, std::move(w));
  }
  for (std::size_t t = 0; t < 60; ++t) {
    WorldSet w(R);
    w.set(t * k);
    b.valuation("pos_" + std::to_string(t), std::move(w));
  }
  return b.build();
}

EvidenceModel clock_example2(std::size_t resolution,
                             const std::vector<Mu>& mu_grid) {
  const std::size_t k = check_resolution(resolution);
  const std::size_t R = resolution;

  std::vector<Mu> mus;
  for (const Mu& m : mu_grid) {
    if (m.num <= 0 || m.num >= m.den)
      throw Error("precision level must lie strictly inside (0,1)");
    bool dup = false;
    for (const Mu& seen : mus) dup = dup || mu_equals(seen, m.num, m.den);
    if (!dup) mus.push_back(m);
  }
  if (mus.empty()) throw Error("the precision grid is empty");
  std::sort(mus.begin(), mus.end(), [](const Mu& a, const Mu& b) {
    return a.num * b.den < b.num * a.den;
  });
  bool has3 = false, has4 = false;
  for (const Mu& m : mus) {
    has3 = has3 || mu_equals(m, 3, 10);
    has4 = has4 || mu_equals(m, 2, 5);
  }
  if (!has3 || !has4)
    throw Error("the precision grid must include 0.3 and 0.4");

  const std::size_t M = mus.size();
  const std::size_t N = R * M;
  auto index = [&](std::size_t i, std::size_t m) { return i * M + m; };

  EvidenceModel::Builder b;
  for (std::size_t i = 0; i < R; ++i)
    for (const Mu& m : mus) b.add_world(minute_label(i, k) + "@" + m.label);
  b.add_evidence("e");
  for (std::size_t i = 0; i < R; ++i) {
    if (i == 0 || 2 * i >= R) continue;
    for (std::size_t m = 0; m < M; ++m) {
      const long long a = mus[m].num, d = mus[m].den;
      WorldSet w(N);
      // c-axis: strictly inside ((1-μ)c, (1-μ)c + 30μ), scaled to the
      // grid and cleared of denominators; the μ-axis is unconstrained —
      // the glance says nothing about its own precision.
      const long long ii = static_cast<long long>(i);
      for (std::size_t j = 0; j < R; ++j) {
        const long long jj = static_cast<long long>(j);
        if ((d - a) * ii < d * jj &&
            2 * d * jj < 2 * (d - a) * ii + a * static_cast<long long>(R))
          for (std::size_t m2 = 0; m2 < M; ++m2) w.set(index(j, m2));
      }
      b.interp(0, index(i, m), std::move(w));
    }
  }
  for (std::size_t t = 0; t < 60; ++t) {
    WorldSet w(N);
    for (std::size_t m = 0; m < M; ++m) w.set(index(t * k, m));
    b.valuation("pos_" + std::to_string(t), std::move(w));
  }
  return b.build();
}

const std::vector<std::string>& gallery() {
  static const std::vector<std::string> names = {
      "two-world", "chain3", "ssm-collapse", "const-gen", "upset2"};
  return names;
}

nlohmann::json gallery_doc(const std::string& name) {
  using nlohmann::json;
  if (name == "two-world")
    return json{{"kind", "evidence"},
                {"worlds", {"a", "b"}},
                {"evidence", {"e"}},
                {"interpretation",
                 {{"e", {{"a", {"a", "b"}}, {"b", {"b"}}}}}},
                {"valuation", {{"p", {"a"}}}}};
  if (name == "chain3")
    return json{{"kind", "evidence"},
                {"worlds", {"a", "b", "c"}},
                {"evidence", {"e"}},
                {"interpretation",
                 {{"e", {{"a", {"a", "b"}}, {"b", {"b", "c"}}, {"c", {"c"}}}}}},
                {"valuation", {{"p", {"a", "b"}}}}};
  if (name == "ssm-collapse") {
    EvidenceModel m = subset_space_to_evidence(
        {"1", "2", "3"}, {{"1", "2"}, {"3"}},
        {{"p", {"1"}}, {"q", {"3"}}});
    return save_model(m);
  }
  if (name == "const-gen")
    return json{{"kind", "interaction"},
                {"worlds", {"a", "b", "c"}},
                {"evidence", {"g1", "g2"}},
                {"interpretation",
                 {{"g1",
                   {{"a", {"a", "b"}}, {"b", {"a", "b"}}, {"c", {"a", "b"}}}},
                  {"g2",
                   {{"a", {"b", "c"}}, {"b", {"b", "c"}}, {"c", {"b", "c"}}}}}},
                {"valuation", {{"p", {"b"}}}}};
  if (name == "upset2") {
    // Relation pair lists must be built explicitly: a braced list of
    // two-string pairs would read as a JSON object, not an array.
    json doc;
    doc["kind"] = "relational-knowability";
    doc["worlds"] = json::array({"1", "2"});
    doc["R_E"] = json::array({json::array({"1", "1"}), json::array({"2", "2"})});
    doc["R_Box"] = json::array({json::array({"1", "1"}), json::array({"1", "2"}),
                                json::array({"2", "2"})});
    doc["valuation"] = json{{"p", json::array({"2"})}};
    return doc;
  }
  std::string known;
  for (const std::string& n : gallery()) known += (known.empty() ? "" : ", ") + n;
  throw Error("unknown gallery model '" + name + "' (have: " + known + ")");
}

}  // namespace evlab

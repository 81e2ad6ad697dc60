#pragma once

// File formats for the analysis stage: observation table (TSV), correlation
// results (JSON), aligned text tables and boxplot rows (TSV).

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "dyntest/analysis.hpp"
#include "dyntest/error.hpp"

namespace dyntest {

enum class OutputFormat { text, structured, tsv };

inline std::string_view to_string(OutputFormat f) {
  switch (f) {
    case OutputFormat::text: return "text";
    case OutputFormat::structured: return "structured";
    case OutputFormat::tsv: return "tsv";
  }
  return "?";
}

inline std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

/// Six decimals with trailing zeros dropped: 2.75, 12, 0.333333.
inline std::string format_real(double v) {
  std::string s = fixed(v, 6);
  while (!s.empty() && s.back() == '0') s.pop_back();
  if (!s.empty() && s.back() == '.') s.pop_back();
  if (s == "-0") s = "0";
  return s;
}

/// The value that prints as `fixed(v, 6)`; used for every real in JSON.
inline double round6(double v) { return std::stod(fixed(v, 6)); }

// ----------------------------------------------------------- observations

inline void write_observations(std::ostream& out, const std::vector<ObservationRow>& rows) {
  out << "class_id\tIC\tEC\tEF\tTLOC\tNTC\n";
  for (const auto& r : rows) {
    out << r.class_id << '\t' << r.ic << '\t' << r.ec << '\t' << r.ef << '\t' << r.tloc << '\t' << r.ntc << '\n';
  }
}

inline std::vector<ObservationRow> read_observations(std::istream& in) {
  std::vector<ObservationRow> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (detail::is_blank(line) || line.front() == '#' || line.starts_with("class_id\t")) continue;
    auto f = detail::split_tabs(line);
    if (f.size() != 6) throw ParseError(line_no, "observation row needs 6 fields");
    ObservationRow r;
    r.class_id = f[0];
    std::uint64_t* slots[] = {&r.ic, &r.ec, &r.ef, &r.tloc, &r.ntc};
    for (int i = 0; i < 5; ++i) {
      auto s = f[i + 1];
      auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), *slots[i]);
      if (ec != std::errc{} || p != s.data() + s.size()) throw ParseError(line_no, "bad count '" + std::string(s) + "'");
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

// -------------------------------------------------------------- JSON

inline nlohmann::json to_json(const CorrelationMatrix& m) {
  using nlohmann::json;
  json cells = json::array();
  for (const auto& c : m.cells) {
    json cell;
    cell["pair"] = c.pair_name();
    cell["n"] = m.n;
    cell["degenerate"] = c.degenerate();
    if (c.result) {
      cell["tau"] = round6(c.result->tau);
      cell["p"] = round6(c.result->p);
      cell["strength"] = to_string(c.result->strength);
      cell["direction"] = to_string(c.result->direction);
      cell["significant"] = c.result->significant;
    } else {
      cell["tau"] = nullptr;
      cell["p"] = nullptr;
      cell["strength"] = to_string(Strength::none);
      cell["direction"] = to_string(Direction::none);
      cell["significant"] = false;
    }
    cells.push_back(std::move(cell));
  }
  json normality = json::array();
  for (const auto& nc : m.normality) {
    json entry;
    entry["variable"] = to_string(nc.variable);
    entry["n"] = nc.n;
    entry["degenerate"] = !nc.result.has_value();
    if (nc.result) {
      entry["w"] = round6(nc.result->w);
      entry["p"] = round6(nc.result->p);
      entry["normal"] = nc.result->normal_at_alpha;
    } else {
      entry["w"] = nullptr;
      entry["p"] = nullptr;
      entry["normal"] = nullptr;
    }
    normality.push_back(std::move(entry));
  }
  return json{{"alpha", m.alpha}, {"n", m.n}, {"cells", cells}, {"normality", normality}};
}

namespace detail {

inline Variable variable_from(std::string_view name) {
  for (auto v : kAllVariables) {
    if (to_string(v) == name) return v;
  }
  throw ParseError(0, "unknown variable '" + std::string(name) + "'");
}

template <class Enum, std::size_t N>
Enum enum_from(std::string_view name, const std::array<Enum, N>& values) {
  for (auto v : values) {
    if (to_string(v) == name) return v;
  }
  throw ParseError(0, "unknown label '" + std::string(name) + "'");
}

}  // namespace detail

inline CorrelationMatrix matrix_from_json(const nlohmann::json& doc) {
  try {
    CorrelationMatrix m;
    m.alpha = doc.at("alpha").get<double>();
    m.n = doc.at("n").get<std::size_t>();
    for (const auto& c : doc.at("cells")) {
      const auto pair = c.at("pair").get<std::string>();
      const auto dash = pair.find('-');
      if (dash == std::string::npos) throw ParseError(0, "bad pair name '" + pair + "'");
      CorrelationCell cell{detail::variable_from(pair.substr(0, dash)), detail::variable_from(pair.substr(dash + 1)),
                           std::nullopt};
      if (!c.at("degenerate").get<bool>()) {
        CorrelationResult r;
        r.tau = c.at("tau").get<double>();
        r.p = c.at("p").get<double>();
        r.n = c.at("n").get<std::size_t>();
        r.strength = detail::enum_from(c.at("strength").get<std::string>(),
                                       std::array{Strength::none, Strength::low, Strength::medium, Strength::strong});
        r.direction = detail::enum_from(c.at("direction").get<std::string>(),
                                        std::array{Direction::direct, Direction::inverse, Direction::none});
        r.significant = c.at("significant").get<bool>();
        cell.result = r;
      }
      m.cells.push_back(cell);
    }
    for (const auto& e : doc.at("normality")) {
      NormalityCell nc{detail::variable_from(e.at("variable").get<std::string>()), e.at("n").get<std::size_t>(),
                       std::nullopt};
      if (!e.at("degenerate").get<bool>()) {
        NormalityResult r;
        r.w = e.at("w").get<double>();
        r.p = e.at("p").get<double>();
        r.n = nc.n;
        r.normal_at_alpha = e.at("normal").get<bool>();
        nc.result = r;
      }
      m.normality.push_back(nc);
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(0, std::string("correlation document: ") + e.what());
  }
}

inline std::string render_structured(const CorrelationMatrix& m) { return to_json(m).dump(2) + "\n"; }

// -------------------------------------------------------------- text

namespace detail {

inline std::string table_row(const std::vector<std::string>& fields, std::size_t width = 10) {
  std::string row;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    row += fields[i];
    if (i + 1 < fields.size() && fields[i].size() < width) row.append(width - fields[i].size(), ' ');
  }
  return row;
}

}  // namespace detail

/// Aligned tables in the layout of the published correlation tables, then a
/// per-pair association summary and the normality gate.
inline std::string render_text(const CorrelationMatrix& m) {
  auto tau = [](const CorrelationCell& c) {
    return c.result ? fixed(c.result->tau, 3) + (c.result->significant ? "*" : "") : std::string("n/a");
  };
  auto p = [](const CorrelationCell& c) { return c.result ? fixed(c.result->p, 3) : std::string("n/a"); };
  using V = Variable;
  using detail::table_row;

  std::ostringstream out;
  std::ostringstream alpha;
  alpha << m.alpha;
  out << "observations: " << m.n << "\nalpha: " << alpha.str() << "\n\n";

  out << "Dynamic coupling vs test suite metrics (Kendall tau-b)\n";
  out << table_row({"metric", "TLOC tau", "TLOC p", "NTC tau", "NTC p"}) << '\n';
  for (auto v : {V::ec, V::ic}) {
    const auto& a = m.cell(v, V::tloc);
    const auto& b = m.cell(v, V::ntc);
    out << table_row({std::string(to_string(v)), tau(a), p(a), tau(b), p(b)}) << '\n';
  }
  out << "\nExecution frequency vs test suite metrics (Kendall tau-b)\n";
  out << table_row({"metric", "TLOC tau", "TLOC p", "NTC tau", "NTC p"}) << '\n';
  {
    const auto& a = m.cell(V::ef, V::tloc);
    const auto& b = m.cell(V::ef, V::ntc);
    out << table_row({"EF", tau(a), p(a), tau(b), p(b)}) << '\n';
  }
  out << "\nDynamic coupling vs execution frequency (Kendall tau-b)\n";
  out << table_row({"metric", "EF tau", "EF p"}) << '\n';
  for (auto v : {V::ic, V::ec}) {
    const auto& a = m.cell(v, V::ef);
    out << table_row({std::string(to_string(v)), tau(a), p(a)}) << '\n';
  }

  out << "\nAssociations\n";
  out << table_row({"pair", "tau", "p", "strength", "direction", "significant"}) << '\n';
  for (const auto& c : m.cells) {
    if (!c.result) {
      out << table_row({c.pair_name(), "n/a", "n/a", "degenerate", "none", "no"}) << '\n';
      continue;
    }
    const auto& r = *c.result;
    out << table_row({c.pair_name(), fixed(r.tau, 3), fixed(r.p, 3), std::string(to_string(r.strength)),
                      std::string(to_string(r.direction)), r.significant ? "yes" : "no"})
        << '\n';
  }

  out << "\nNormality gate (Shapiro-Wilk)\n";
  out << table_row({"variable", "W", "p", "normal"}) << '\n';
  for (const auto& nc : m.normality) {
    if (!nc.result) {
      out << table_row({std::string(to_string(nc.variable)), "n/a", "n/a", "n/a"}) << '\n';
      continue;
    }
    out << table_row({std::string(to_string(nc.variable)), fixed(nc.result->w, 4), fixed(nc.result->p, 4),
                      nc.result->normal_at_alpha ? "yes" : "no"})
        << '\n';
  }
  out << "\n* significant at p <= alpha\n";
  return out.str();
}

// ----------------------------------------------------------- boxplots

inline void write_boxplots(std::ostream& out, const std::vector<std::pair<Variable, BoxplotSummary>>& boxes) {
  out << "variable\tmin\tq1\tmedian\tq3\tmax\toutliers\n";
  for (const auto& [v, b] : boxes) {
    out << to_string(v) << '\t' << format_real(b.min) << '\t' << format_real(b.q1) << '\t' << format_real(b.median)
        << '\t' << format_real(b.q3) << '\t' << format_real(b.max) << '\t';
    if (b.outliers.empty()) out << '-';
    for (std::size_t i = 0; i < b.outliers.size(); ++i) out << (i ? "," : "") << format_real(b.outliers[i]);
    out << '\n';
  }
}

}  // namespace dyntest

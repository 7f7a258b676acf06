#include "ban/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace ban {

namespace {

std::pair<int, int> line_column(const std::string& text, std::size_t offset) {
  int line = 1;
  int column = 1;
  for (std::size_t k = 0; k < offset && k < text.size(); ++k) {
    if (text[k] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return {line, column};
}

}  // namespace

BooleanNetwork parse_network_spec(const std::string& text) {
  Json spec;
  try {
    spec = Json::parse(text);
  } catch (const Json::parse_error& e) {
    const auto [line, column] = line_column(text, e.byte > 0 ? e.byte - 1 : 0);
    throw ParseError("malformed JSON", line, column);
  }
  auto where = [&](const std::string& needle, std::size_t from = 0) {
    const std::size_t at = text.find(needle, from);
    return at == std::string::npos ? std::pair<int, int>{1, 1}
                                   : line_column(text, at);
  };
  if (!spec.is_object() || !spec.contains("n") || !spec["n"].is_number_integer()) {
    const auto [line, column] = where("\"n\"");
    throw ParseError("expected an integer field \"n\"", line, column);
  }
  if (!spec.contains("locals") || !spec["locals"].is_array()) {
    const auto [line, column] = where("\"locals\"");
    throw ParseError("expected an array field \"locals\"", line, column);
  }
  const int n = spec["n"].get<int>();
  const auto& locals = spec["locals"];
  if (n < 1 || n > kMaxWidth || static_cast<int>(locals.size()) != n) {
    const auto [line, column] = where("\"locals\"");
    throw ParseError("\"locals\" must hold exactly n = " + std::to_string(n) +
                         " expressions",
                     line, column);
  }
  std::vector<Expr> exprs;
  std::size_t cursor = text.find("\"locals\"");
  for (int i = 0; i < n; ++i) {
    const auto& item = locals[static_cast<std::size_t>(i)];
    if (!item.is_string()) {
      const auto [line, column] = line_column(text, cursor);
      throw ParseError("local " + std::to_string(i) + " must be a string", line,
                       column);
    }
    const std::string expr_text = item.get<std::string>();
    const std::size_t at = text.find('"' + expr_text + '"', cursor);
    const std::size_t start = at == std::string::npos ? cursor : at + 1;
    if (at != std::string::npos) cursor = at + expr_text.size() + 2;
    const auto [line, column] = line_column(text, start);
    try {
      exprs.push_back(Expr::parse(expr_text, line));
    } catch (const ParseError& e) {
      throw ParseError("local " + std::to_string(i) + ": invalid expression",
                       line, column + e.column() - 1);
    }
    for (int v : exprs.back().variables()) {
      if (v >= n) {
        throw ParseError("local " + std::to_string(i) + " references x" +
                             std::to_string(v) + " outside the network",
                         line, column);
      }
    }
  }
  return BooleanNetwork::from_expressions(exprs);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << contents;
}

BooleanNetwork load_network_spec(const std::string& path) {
  return parse_network_spec(read_file(path));
}

namespace {

std::string arc_label(const TransitionGraph& tg, AutomatonSet w) {
  switch (tg.mode().kind()) {
    case UpdateMode::Kind::Parallel:
      return "V";
    case UpdateMode::Kind::BlockSequential:
      return "blocks";
    default:
      return state_string(w, tg.width());
  }
}

}  // namespace

std::string to_dot(const TransitionGraph& tg, const AttractorReport& report) {
  const int n = tg.width();
  std::map<std::uint64_t, const char*> fill;
  for (const Attractor& a : report.attractors) {
    for (std::uint64_t x : a.states) {
      fill[x] = a.fixed_point() ? "lightgray" : "darkgray";
    }
  }
  std::ostringstream out;
  out << "digraph transitions {\n";
  out << "  node [shape=box, fontname=\"monospace\"];\n";
  for (std::uint64_t x = 0; x < tg.vertex_count(); ++x) {
    out << "  \"" << state_string(x, n) << '"';
    if (const auto it = fill.find(x); it != fill.end()) {
      out << " [style=filled, fillcolor=" << it->second << ']';
    }
    out << ";\n";
  }
  for (std::uint64_t x = 0; x < tg.vertex_count(); ++x) {
    std::map<std::uint64_t, std::vector<std::string>> merged;
    tg.for_each_arc(x, [&](AutomatonSet w, std::uint64_t t) {
      merged[t].push_back(arc_label(tg, w));
    });
    for (const auto& [t, labels] : merged) {
      out << "  \"" << state_string(x, n) << "\" -> \"" << state_string(t, n)
          << "\" [label=\"";
      for (std::size_t k = 0; k < labels.size(); ++k) {
        out << (k > 0 ? "," : "") << labels[k];
      }
      out << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

Json attractors_json(const AttractorReport& report) {
  Json list = Json::array();
  for (const Attractor& a : report.attractors) {
    Json item;
    item["length"] = a.length;
    if (a.period) item["period"] = *a.period;
    Json states = Json::array();
    for (std::uint64_t x : a.states) states.push_back(state_string(x, report.width));
    item["states"] = std::move(states);
    list.push_back(std::move(item));
  }
  return list;
}

Json graph_json(const TransitionGraph& tg, const AttractorReport& report) {
  const int n = tg.width();
  Json out;
  out["mode"] = tg.mode().to_string();
  out["n"] = n;
  Json arcs = Json::array();
  for (std::uint64_t x = 0; x < tg.vertex_count(); ++x) {
    tg.for_each_arc(x, [&](AutomatonSet w, std::uint64_t t) {
      arcs.push_back(Json::array(
          {state_string(x, n), state_string(t, n), arc_label(tg, w)}));
    });
  }
  out["arcs"] = std::move(arcs);
  out["attractors"] = attractors_json(report);
  out["convergence_time"] = report.convergence_time;
  return out;
}

}  // namespace ban

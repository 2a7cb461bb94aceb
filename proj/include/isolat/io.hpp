#pragma once

#include <istream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "isolat/lattice.hpp"
#include "isolat/map.hpp"
#include "isolat/partial.hpp"

// Line-based text formats.  '#' starts a comment; blank lines are skipped;
// tokens are whitespace-separated, so labels must not contain whitespace.
//
//   lattice <name>            map <name> : <dom> -> <cod>     partial <name>
//   elements <l> <l> ...      <x> -> <y>                      elements ...
//   cover <x> < <y>           ...                             cover <x> < <y>
//                                                             meet <x> <y> = <z>
//                                                             join <x> <y> = <z>
//
// A file holds one object.  Inside scenario files the same blocks appear
// terminated by a line reading "end".

namespace isolat::io {

inline std::vector<std::string> tokens(const std::string& raw) {
  std::string line = raw.substr(0, raw.find('#'));
  std::istringstream ss(line);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(std::move(t));
  return out;
}

// next non-blank, non-comment line; false at end of input
inline bool next_line(std::istream& in, std::vector<std::string>& out) {
  std::string raw;
  while (std::getline(in, raw)) {
    out = tokens(raw);
    if (!out.empty()) return true;
  }
  out.clear();
  return false;
}

struct PosetLines {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  std::vector<std::vector<std::string>> extra;  // lines the caller interprets
};

// Reads element/cover lines until "end" (when terminated) or end of stream.
// Lines that are neither are handed back in `extra`.
inline PosetLines read_poset_lines(std::istream& in, bool terminated) {
  PosetLines out;
  std::vector<std::string> t;
  while (next_line(in, t)) {
    if (terminated && t.size() == 1 && t[0] == "end") return out;
    if (t[0] == "elements") {
      out.labels.insert(out.labels.end(), t.begin() + 1, t.end());
    } else if (t[0] == "cover") {
      if (t.size() != 4 || t[2] != "<") fail(Errc::parse_error, "expected 'cover <x> < <y>'");
      out.covers.emplace_back(t[1], t[3]);
    } else {
      out.extra.push_back(std::move(t));
    }
  }
  if (terminated) fail(Errc::parse_error, "missing 'end' terminator");
  return out;
}

inline FiniteLattice read_lattice_body(std::istream& in, const std::string& name, bool terminated = false) {
  PosetLines pl = read_poset_lines(in, terminated);
  if (!pl.extra.empty()) fail(Errc::parse_error, "unexpected line '" + pl.extra.front().front() + "' in lattice block");
  if (pl.labels.empty()) fail(Errc::parse_error, "lattice '" + name + "' has no elements line");
  return lattice_from_leq(Poset::from_covers(name, std::move(pl.labels), pl.covers));
}

inline FiniteLattice read_lattice(std::istream& in) {
  std::vector<std::string> t;
  if (!next_line(in, t) || t.size() != 2 || t[0] != "lattice")
    fail(Errc::parse_error, "expected 'lattice <name>' header");
  return read_lattice_body(in, t[1]);
}

inline FiniteLattice read_lattice(const std::string& text) {
  std::istringstream in(text);
  return read_lattice(in);
}

inline std::string write_lattice(const FiniteLattice& l) {
  std::string out = "lattice " + (l.name().empty() ? std::string("unnamed") : l.name()) + "\nelements";
  for (int i = 0; i < l.size(); ++i) {
    if (l.label(i).find_first_of(" \t") != std::string::npos)
      fail(Errc::invalid_input, "label '" + l.label(i) + "' contains whitespace");
    out += " " + l.label(i);
  }
  out += "\n";
  for (const auto& [x, y] : l.poset().cover_pairs()) out += "cover " + l.label(x) + " < " + l.label(y) + "\n";
  return out;
}

inline PartialLattice read_partial_body(std::istream& in, const std::string& name, bool terminated = false) {
  PosetLines pl = read_poset_lines(in, terminated);
  if (pl.labels.empty()) fail(Errc::parse_error, "partial lattice '" + name + "' has no elements line");
  Poset p = Poset::from_covers(name, pl.labels, pl.covers);
  const int n = p.size();
  std::vector<std::int32_t> pm(static_cast<std::size_t>(n) * n, -1), pj(pm);
  for (int x = 0; x < n; ++x) {
    pm[static_cast<std::size_t>(x) * n + x] = x;
    pj[static_cast<std::size_t>(x) * n + x] = x;
  }
  for (const auto& t : pl.extra) {
    if (t.size() != 5 || (t[0] != "meet" && t[0] != "join") || t[3] != "=")
      fail(Errc::parse_error, "expected 'meet <x> <y> = <z>' or 'join <x> <y> = <z>'");
    auto& table = t[0] == "meet" ? pm : pj;
    const int x = p.require(t[1]), y = p.require(t[2]), z = p.require(t[4]);
    table[static_cast<std::size_t>(x) * n + y] = z;
    table[static_cast<std::size_t>(y) * n + x] = z;
  }
  return PartialLattice::from_parts(std::move(p), std::move(pm), std::move(pj));
}

inline PartialLattice read_partial(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::string> t;
  if (!next_line(in, t) || t.size() != 2 || t[0] != "partial")
    fail(Errc::parse_error, "expected 'partial <name>' header");
  return read_partial_body(in, t[1]);
}

inline std::string write_partial(const PartialLattice& p) {
  std::string out = "partial " + (p.name().empty() ? std::string("unnamed") : p.name()) + "\nelements";
  for (int i = 0; i < p.size(); ++i) {
    if (p.label(i).find_first_of(" \t") != std::string::npos)
      fail(Errc::invalid_input, "label '" + p.label(i) + "' contains whitespace");
    out += " " + p.label(i);
  }
  out += "\n";
  for (const auto& [x, y] : p.poset().cover_pairs()) out += "cover " + p.label(x) + " < " + p.label(y) + "\n";
  for (int x = 0; x < p.size(); ++x)
    for (int y = x + 1; y < p.size(); ++y) {
      if (p.meet_defined(x, y))
        out += "meet " + p.label(x) + " " + p.label(y) + " = " + p.label(p.pmeet(x, y)) + "\n";
      if (p.join_defined(x, y))
        out += "join " + p.label(x) + " " + p.label(y) + " = " + p.label(p.pjoin(x, y)) + "\n";
    }
  return out;
}

struct MapHeader {
  std::string name, dom, cod;
};

inline MapHeader parse_map_header(const std::vector<std::string>& t) {
  if (t.size() != 6 || t[0] != "map" || t[2] != ":" || t[4] != "->")
    fail(Errc::parse_error, "expected 'map <name> : <dom> -> <cod>' header");
  return {t[1], t[3], t[5]};
}

inline MonotoneMap read_map_body(std::istream& in, const MapHeader& h, const Carrier& dom, const Carrier& cod,
                                 bool terminated = false) {
  std::vector<int> img(static_cast<std::size_t>(dom.size()), -1);
  std::vector<std::string> t;
  bool ended = false;
  while (next_line(in, t)) {
    if (terminated && t.size() == 1 && t[0] == "end") {
      ended = true;
      break;
    }
    if (t.size() != 3 || t[1] != "->") fail(Errc::parse_error, "expected '<x> -> <y>' in map block");
    img[static_cast<std::size_t>(dom.order().require(t[0]))] = cod.order().require(t[2]);
  }
  if (terminated && !ended) fail(Errc::parse_error, "missing 'end' terminator");
  for (int x = 0; x < dom.size(); ++x)
    if (img[static_cast<std::size_t>(x)] < 0)
      fail(Errc::parse_error, "map '" + h.name + "' leaves '" + dom.label(x) + "' unassigned");
  return make_map(h.name, dom, cod, std::move(img));
}

inline std::string write_map(const MonotoneMap& m) {
  std::string out = "map " + m.name + " : " + m.dom.order().name() + " -> " + m.cod.order().name() + "\n";
  for (int x = 0; x < m.dom.size(); ++x) out += m.dom.label(x) + " -> " + m.cod.label(m.img[x]) + "\n";
  return out;
}

}  // namespace isolat::io

#include "efunc/diagram_io.hpp"

#include <fstream>
#include <map>
#include <optional>

#include "cursor.hpp"
#include "efunc/errors.hpp"

namespace efunc {

namespace {

std::ifstream open_or_throw(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ConfigError(std::string("cannot open ") + what + " file '" + path + "'");
  return in;
}

Atom parse_atom(detail::Cursor& cur, const RelationalLanguage& language, Code universe) {
  Atom a;
  const std::size_t at = cur.mark();
  a.relation = cur.number();
  if (a.relation >= language.size()) cur.fail_at(at, "relation index outside the language");
  cur.expect('(');
  if (!cur.consume(')')) {
    do {
      const std::size_t arg_at = cur.mark();
      a.args.push_back(cur.number());
      if (a.args.back() >= universe) cur.fail_at(arg_at, "element outside the universe window");
    } while (cur.consume(','));
    cur.expect(')');
  }
  if (a.args.size() != language.arity(a.relation)) cur.fail_at(at, "wrong number of arguments");
  return a;
}

Stage parse_stage(detail::Cursor& cur) { return cur.consume('@') ? cur.number() : 0; }

}  // namespace

StructurePresentation parse_structure(std::istream& in, const std::string& source) {
  std::optional<RelationalLanguage> language;
  std::optional<Code> universe;
  bool total = false;
  struct Pending {
    Atom atom;
    Stage stage;
    bool negative;
    std::size_t line;
  };
  std::vector<Pending> pending;

  detail::for_each_line(in, source, [&](detail::Cursor& cur) {
    if (cur.consume("language")) {
      if (language) cur.fail("language declared twice");
      cur.expect(':');
      RelationalLanguage lang;
      while (!cur.at_end()) {
        const std::size_t at = cur.mark();
        const auto a = cur.number();
        if (a == 0) cur.fail_at(at, "arity must be positive");
        lang.arities.push_back(a);
      }
      language = std::move(lang);
      return;
    }
    if (cur.consume("universe")) {
      if (universe) cur.fail("universe declared twice");
      universe = cur.number();
      cur.expect_end();
      return;
    }
    if (cur.consume("total")) {
      total = true;
      cur.expect_end();
      return;
    }
    bool negative = false;
    const std::size_t line_start = cur.mark();
    if (cur.consume("negfact")) {
      negative = true;
    } else if (!cur.consume("fact")) {
      cur.fail("expected 'language', 'universe', 'total', 'fact' or 'negfact'");
    }
    if (!language || !universe)
      cur.fail_at(line_start, "facts must follow the language and universe lines");
    Atom a = parse_atom(cur, *language, *universe);
    const Stage st = parse_stage(cur);
    cur.expect_end();
    pending.push_back({std::move(a), st, negative, cur.line_no()});
  });

  if (!language) throw ParseError(source, 0, 0, "missing 'language:' line");
  if (!universe) throw ParseError(source, 0, 0, "missing 'universe' line");
  StructurePresentation s(*language, *universe, total);
  for (const auto& p : pending) {
    if (p.negative)
      s.add_negative_fact(p.atom, p.stage);
    else
      s.add_fact(p.atom, p.stage);
  }
  return s;
}

StructurePresentation load_structure(const std::string& path) {
  auto in = open_or_throw(path, "structure");
  return parse_structure(in, path);
}

void write_structure(std::ostream& out, const StructurePresentation& s,
                     const std::vector<std::string>& header) {
  for (const auto& line : header) out << "# " << line << '\n';
  out << "language:";
  for (auto a : s.language().arities) out << ' ' << a;
  out << "\nuniverse " << s.universe() << '\n';
  if (s.total()) out << "total\n";
  auto emit = [&out](const char* kw, const Atom& a, Stage st) {
    out << kw << ' ' << a.relation << " (";
    for (std::size_t i = 0; i < a.args.size(); ++i) out << (i ? "," : "") << a.args[i];
    out << ") @" << st << '\n';
  };
  for (const auto& [a, st] : s.facts()) emit("fact", a, st);
  for (const auto& [a, st] : s.negative_facts()) emit("negfact", a, st);
}

Enumeration parse_enumeration(std::istream& in, const std::string& source) {
  std::map<Code, Code> values;
  bool partial = false;
  detail::for_each_line(in, source, [&](detail::Cursor& cur) {
    if (cur.consume("partial")) {
      partial = true;
      cur.expect_end();
      return;
    }
    const std::size_t at = cur.mark();
    const Code x = cur.number();
    cur.expect("->");
    const Code y = cur.number();
    cur.expect_end();
    if (!values.emplace(x, y).second) cur.fail_at(at, "element mapped twice");
  });
  Enumeration f;
  f.partial = partial;
  for (const auto& [x, y] : values) {
    if (x != f.values.size())
      throw ParseError(source, 0, 0, "enumeration domain skips " + std::to_string(f.values.size()));
    f.values.push_back(y);
  }
  return f;
}

Enumeration load_enumeration(const std::string& path) {
  auto in = open_or_throw(path, "enumeration");
  return parse_enumeration(in, path);
}

void write_enumeration(std::ostream& out, const Enumeration& f) {
  if (f.partial) out << "partial\n";
  for (Code x = 0; x < f.size(); ++x) out << x << " -> " << f(x) << '\n';
}

CESchedule parse_schedule(std::istream& in, const std::string& source) {
  std::vector<std::pair<Code, Stage>> entries;
  CodeSet seen;
  detail::for_each_line(in, source, [&](detail::Cursor& cur) {
    const std::size_t at = cur.mark();
    const Code e = cur.number();
    cur.expect('@');
    const Stage s = cur.number();
    cur.expect_end();
    if (!seen.insert(e).second) cur.fail_at(at, "element scheduled twice");
    entries.emplace_back(e, s);
  });
  return CESchedule(std::move(entries));
}

CESchedule load_schedule(const std::string& path) {
  auto in = open_or_throw(path, "schedule");
  return parse_schedule(in, path);
}

void write_schedule(std::ostream& out, const CESchedule& schedule) {
  for (const auto& [e, s] : schedule.entries()) out << e << " @" << s << '\n';
}

}  // namespace efunc

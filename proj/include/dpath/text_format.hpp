// Line-oriented text format for complexes, paths and path families.
//
//   # comment
//   space flavor=M
//   state 0
//   natpath b : s1 ; s2                 steps are cell@(coords), or a bare
//                                       cell name for a dimension-0 cell
//   cell d dim=1 src=0 tgt=2 attach=two_paths(b,b)
//   cell k dim=2 src=0 tgt=1 attach=const(b) | psi(upper,lower) | endpoints
//   path p : base=b reparam=pl 1 2 : 0 0 ; 1 2
//   family f : [0,0] d@(-1) | (0,1) d@(-1+2u) | [1,1] d@(1)
//
// The whole file is read before anything is built; cells are then added in
// file order, so a cell may only use natpaths over earlier cells. Errors
// carry file:line locations.

#ifndef DPATH_TEXT_FORMAT_HPP_
#define DPATH_TEXT_FORMAT_HPP_

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "complex.hpp"
#include "error.hpp"
#include "paths.hpp"
#include "rat.hpp"
#include "reparam.hpp"
#include "spaces.hpp"

namespace dpath {

  namespace text {

    struct Located {
      std::string text;
      size_t      line = 0;
    };

    struct NatpathRecord {
      std::string name;
      std::string body;
      size_t      line;
    };

    struct CellRecord {
      std::string id;
      int         dim = 0;
      std::string src;
      std::string tgt;
      std::string attach;
      size_t      line;
    };

    struct PathRecord {
      std::string name;
      std::string base;
      std::string reparam;
      size_t      line;
    };

    struct FamilyRecord {
      std::string name;
      std::string body;
      size_t      line;
    };

    struct Document {
      std::string                file;
      std::optional<Flavor>      flavor;
      std::vector<Located>       states;
      std::vector<NatpathRecord> natpaths;
      std::vector<CellRecord>    cells;
      std::vector<PathRecord>    paths;
      std::vector<FamilyRecord>  families;
    };

    [[noreturn]] inline void fail_at(Errc               code,
                                     std::string const& file,
                                     size_t             line,
                                     std::string const& msg) {
      fail(code, file + ":" + std::to_string(line) + ": " + msg);
    }

    inline std::string trim(std::string_view s) {
      size_t a = s.find_first_not_of(" \t\r");
      if (a == std::string_view::npos) {
        return "";
      }
      size_t b = s.find_last_not_of(" \t\r");
      return std::string(s.substr(a, b - a + 1));
    }

    inline std::vector<std::string> split(std::string const& s, char sep) {
      std::vector<std::string> out;
      std::string              cur;
      int                      depth = 0;
      for (char ch : s) {
        if (ch == '(' || ch == '[') {
          ++depth;
        } else if (ch == ')' || ch == ']') {
          --depth;
        }
        if (ch == sep && depth == 0) {
          out.push_back(trim(cur));
          cur.clear();
        } else {
          cur += ch;
        }
      }
      out.push_back(trim(cur));
      return out;
    }

    // "name : rest" -> (name, rest)
    inline std::pair<std::string, std::string>
    named(std::string const& rest, std::string const& file, size_t line) {
      auto colon = rest.find(':');
      if (colon == std::string::npos) {
        fail_at(Errc::parse, file, line, "expected '<name> : ...'");
      }
      std::string name = trim(rest.substr(0, colon));
      if (name.empty() || name.find_first_of(" \t") != std::string::npos) {
        fail_at(Errc::parse, file, line, "bad name '" + name + "'");
      }
      return {name, trim(rest.substr(colon + 1))};
    }

    inline std::map<std::string, std::string>
    key_values(std::istringstream& is, std::string const& file, size_t line) {
      std::map<std::string, std::string> kv;
      std::string                        tok;
      while (is >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos || eq == 0) {
          fail_at(Errc::parse, file, line, "expected key=value, got '" + tok + "'");
        }
        kv[tok.substr(0, eq)] = tok.substr(eq + 1);
      }
      return kv;
    }

    inline Document parse_document(std::string const& content,
                                   std::string const& file) {
      Document           doc;
      std::istringstream in(content);
      std::string        raw;
      size_t             line = 0;
      while (std::getline(in, raw)) {
        ++line;
        auto hash = raw.find('#');
        std::string s = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (s.empty()) {
          continue;
        }
        std::istringstream is(s);
        std::string        kw;
        is >> kw;
        std::string rest = trim(s.substr(kw.size()));
        if (kw == "space") {
          auto kv = key_values(is, file, line);
          if (kv.size() != 1 || !kv.count("flavor")) {
            fail_at(Errc::parse, file, line, "expected 'space flavor=G|M'");
          }
          if (doc.flavor) {
            fail_at(Errc::parse, file, line, "second 'space' line");
          }
          if (kv["flavor"] == "G") {
            doc.flavor = Flavor::G;
          } else if (kv["flavor"] == "M") {
            doc.flavor = Flavor::M;
          } else {
            fail_at(Errc::parse, file, line,
                    "unknown flavor '" + kv["flavor"] + "'");
          }
        } else if (kw == "state") {
          std::string name, extra;
          if (!(is >> name) || (is >> extra)) {
            fail_at(Errc::parse, file, line, "expected 'state <name>'");
          }
          doc.states.push_back({name, line});
        } else if (kw == "natpath") {
          auto [n, body] = named(rest, file, line);
          doc.natpaths.push_back({n, body, line});
        } else if (kw == "cell") {
          CellRecord c;
          c.line = line;
          if (!(is >> c.id)) {
            fail_at(Errc::parse, file, line, "expected 'cell <id> ...'");
          }
          auto kv = key_values(is, file, line);
          for (auto const& k : {"dim", "src", "tgt", "attach"}) {
            if (!kv.count(k)) {
              fail_at(Errc::parse, file, line,
                      std::string("cell is missing '") + k + "='");
            }
          }
          if (kv.size() != 4) {
            fail_at(Errc::parse, file, line, "unexpected key in cell record");
          }
          try {
            size_t pos = 0;
            c.dim      = std::stoi(kv["dim"], &pos);
            if (pos != kv["dim"].size()) {
              throw std::invalid_argument("dim");
            }
          } catch (std::exception const&) {
            fail_at(Errc::parse, file, line, "bad dim '" + kv["dim"] + "'");
          }
          c.src    = kv["src"];
          c.tgt    = kv["tgt"];
          c.attach = kv["attach"];
          doc.cells.push_back(std::move(c));
        } else if (kw == "path") {
          auto [n, body] = named(rest, file, line);
          PathRecord p{n, "", "", line};
          auto       b = body.find("base=");
          auto       r = body.find("reparam=");
          if (b != 0 || r == std::string::npos) {
            fail_at(Errc::parse, file, line,
                    "expected 'path <name> : base=<natpath> reparam=<pl ...>'");
          }
          p.base    = trim(body.substr(5, r - 5));
          p.reparam = trim(body.substr(r + 8));
          doc.paths.push_back(std::move(p));
        } else if (kw == "family") {
          auto [n, body] = named(rest, file, line);
          doc.families.push_back({n, body, line});
        } else {
          fail_at(Errc::parse, file, line, "unknown record '" + kw + "'");
        }
      }
      return doc;
    }

    inline Rat parse_rat_at(std::string const& s,
                            std::string const& file,
                            size_t             line) {
      try {
        return Rat::parse(s);
      } catch (Error const& e) {
        fail_at(Errc::parse, file, line, e.what());
      }
    }

    // "cell@(a,b)" | "cell@()" | "cell" -> (cell, coordinate strings)
    inline std::pair<std::string, std::vector<std::string>>
    split_step(std::string const& s, std::string const& file, size_t line) {
      auto at = s.find('@');
      if (at == std::string::npos) {
        if (s.empty() || s.find_first_of("(), \t") != std::string::npos) {
          fail_at(Errc::parse, file, line, "bad step '" + s + "'");
        }
        return {s, {}};
      }
      std::string cell = s.substr(0, at);
      std::string pt   = s.substr(at + 1);
      if (cell.empty() || pt.size() < 2 || pt.front() != '('
          || pt.back() != ')') {
        fail_at(Errc::parse, file, line, "bad step '" + s + "'");
      }
      std::string              inner = trim(pt.substr(1, pt.size() - 2));
      std::vector<std::string> coords;
      if (!inner.empty()) {
        coords = split(inner, ',');
      }
      return {cell, coords};
    }

    inline Step parse_step(std::string const& s,
                           std::string const& file,
                           size_t             line) {
      auto [cell, cs] = split_step(s, file, line);
      std::vector<Rat> c;
      for (auto const& x : cs) {
        c.push_back(parse_rat_at(x, file, line));
      }
      return {cell, DiskPoint(std::move(c))};
    }

    inline NaturalPath parse_natpath(std::string const& body,
                                     std::string const& file,
                                     size_t             line) {
      NaturalPath p;
      for (auto const& s : split(body, ';')) {
        if (s.empty()) {
          fail_at(Errc::parse, file, line, "empty step");
        }
        p.steps.push_back(parse_step(s, file, line));
      }
      return p;
    }

    // "a", "bu", "a+bu", "a-bu", "-u", ...
    inline Affine parse_affine(std::string const& s,
                               std::string const& file,
                               size_t             line) {
      if (s.empty()) {
        fail_at(Errc::parse, file, line, "empty coordinate");
      }
      Affine      a{0, 0};
      size_t      i = 0;
      while (i < s.size()) {
        size_t j = i + 1;
        while (j < s.size() && s[j] != '+' && s[j] != '-') {
          ++j;
        }
        std::string term = s.substr(i, j - i);
        bool        neg  = false;
        if (!term.empty() && (term[0] == '+' || term[0] == '-')) {
          neg  = term[0] == '-';
          term = term.substr(1);
          if (i == 0 && s[0] == '+') {
            fail_at(Errc::parse, file, line, "bad coordinate '" + s + "'");
          }
        }
        if (term.empty()) {
          fail_at(Errc::parse, file, line, "bad coordinate '" + s + "'");
        }
        if (term.back() == 'u') {
          std::string k = term.substr(0, term.size() - 1);
          Rat         c = k.empty() ? Rat(1) : parse_rat_at(k, file, line);
          a.c1 += neg ? -c : c;
        } else {
          Rat c = parse_rat_at(term, file, line);
          a.c0 += neg ? -c : c;
        }
        i = j;
      }
      return a;
    }

    inline UInterval parse_interval(std::string const& s,
                                    std::string const& file,
                                    size_t             line) {
      if (s.size() < 5 || (s.front() != '[' && s.front() != '(')
          || (s.back() != ']' && s.back() != ')')) {
        fail_at(Errc::parse, file, line, "bad interval '" + s + "'");
      }
      auto parts = split(s.substr(1, s.size() - 2), ',');
      if (parts.size() != 2) {
        fail_at(Errc::parse, file, line, "bad interval '" + s + "'");
      }
      return {parse_rat_at(parts[0], file, line),
              parse_rat_at(parts[1], file, line), s.front() == '[',
              s.back() == ']'};
    }

    inline PathFamily parse_family(FamilyRecord const& r,
                                   std::string const&  file) {
      PathFamily fam{r.name, {}};
      for (auto const& piece : split(r.body, '|')) {
        auto close = piece.find_first_of(")]");
        if (piece.empty() || close == std::string::npos) {
          fail_at(Errc::parse, file, r.line, "bad family piece '" + piece + "'");
        }
        FamilyPiece fp;
        fp.where = parse_interval(piece.substr(0, close + 1), file, r.line);
        for (auto const& seg : split(trim(piece.substr(close + 1)), ';')) {
          if (seg.empty()) {
            fail_at(Errc::parse, file, r.line, "empty family segment");
          }
          auto [cell, cs] = split_step(seg, file, r.line);
          FamilySegment fs{cell, {}};
          for (auto const& c : cs) {
            fs.z.push_back(parse_affine(c, file, r.line));
          }
          fp.segments.push_back(std::move(fs));
        }
        fam.pieces.push_back(std::move(fp));
      }
      return fam;
    }

    inline std::map<std::string, NatpathRecord const*>
    natpath_index(Document const& doc) {
      std::map<std::string, NatpathRecord const*> idx;
      for (auto const& n : doc.natpaths) {
        if (!idx.emplace(n.name, &n).second) {
          fail_at(Errc::parse, doc.file, n.line,
                  "duplicate natpath '" + n.name + "'");
        }
      }
      return idx;
    }

    inline GlobularCell build_cell(CellRecord const& r,
                                   Document const&   doc,
                                   std::map<std::string, NatpathRecord const*> const& np) {
      auto ref = [&](std::string const& name) -> NamedPath {
        auto it = np.find(name);
        if (it == np.end()) {
          fail_at(Errc::validation, doc.file, r.line,
                  "unknown natpath '" + name + "'");
        }
        return {name, parse_natpath(it->second->body, doc.file, it->second->line)};
      };
      auto args = [&](std::string const& kw) -> std::optional<std::vector<std::string>> {
        if (r.attach.rfind(kw + "(", 0) != 0 || r.attach.back() != ')') {
          return std::nullopt;
        }
        return split(r.attach.substr(kw.size() + 1, r.attach.size() - kw.size() - 2), ',');
      };
      GlobularCell c{r.id, r.dim, r.src, r.tgt, attach::Endpoints{}};
      if (r.attach == "endpoints") {
        return c;
      }
      if (auto a = args("two_paths"); a && a->size() == 2) {
        c.attach = attach::TwoPaths{ref((*a)[0]), ref((*a)[1])};
      } else if (auto b = args("const"); b && b->size() == 1) {
        c.attach = attach::Constant{ref((*b)[0])};
      } else if (auto p = args("psi"); p && p->size() == 2) {
        c.attach = attach::Psi{(*p)[0], (*p)[1]};
      } else {
        fail_at(Errc::parse, doc.file, r.line,
                "unknown attachment '" + r.attach + "'");
      }
      return c;
    }

    inline void push_located(GlobularComplex& cx, GlobularCell c,
                             std::string const& file, size_t line) {
      try {
        cx.push(std::move(c));
      } catch (Error const& e) {
        fail_at(e.code(), file, line, e.what());
      }
    }

    inline GlobularComplex build_complex(Document const& doc) {
      if (!doc.flavor) {
        fail_at(Errc::parse, doc.file, 1, "missing 'space flavor=...' line");
      }
      std::vector<std::string> states;
      for (auto const& s : doc.states) {
        states.push_back(s.text);
      }
      std::optional<GlobularComplex> cx;
      try {
        cx.emplace(*doc.flavor, states);
      } catch (Error const& e) {
        size_t line = doc.states.empty() ? 1 : doc.states.front().line;
        fail_at(e.code(), doc.file, line, e.what());
      }
      auto np = natpath_index(doc);
      for (size_t i = 0; i < doc.cells.size(); ++i) {
        auto const& r = doc.cells[i];
        GlobularCell c = build_cell(r, doc, np);
        std::vector<std::string> used;
        if (auto const* t = std::get_if<attach::TwoPaths>(&c.attach)) {
          used = concat(t->minus.path, t->plus.path).carrier();
        } else if (auto const* k = std::get_if<attach::Constant>(&c.attach)) {
          used = k->path.path.carrier();
        } else if (auto const* p = std::get_if<attach::Psi>(&c.attach)) {
          used = {p->upper, p->lower};
        }
        for (auto const& u : used) {
          for (size_t j = i; j < doc.cells.size(); ++j) {
            if (doc.cells[j].id == u) {
              fail_at(Errc::validation, doc.file, r.line,
                      "skeletal order: cell '" + r.id + "' is attached along '" + u
                          + "', which is declared later (line "
                          + std::to_string(doc.cells[j].line) + ")");
            }
          }
        }
        push_located(*cx, std::move(c), doc.file, r.line);
      }
      return *cx;
    }

  }  // namespace text

  inline std::string read_file(std::string const& path) {
    std::ifstream in(path);
    if (!in) {
      fail(Errc::parse, path + ": cannot open file");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  // Everything a file declares, built against its own complex or a given one.
  struct Loaded {
    std::optional<GlobularComplex>       complex;
    std::map<std::string, NaturalPath>   natpaths;
    std::map<std::string, ExecutionPath> paths;
    std::vector<std::string>             path_order;
    std::map<std::string, PathFamily>    families;
    std::vector<GlobularCell>            cells;  // only when loaded as cells
  };

  // `flavor`, when given, replaces the file's own flavor.
  inline GlobularComplex parse_complex(std::string const&    content,
                                       std::string const&    file   = "<input>",
                                       std::optional<Flavor> flavor = std::nullopt) {
    auto doc = text::parse_document(content, file);
    doc.file = file;
    if (flavor) {
      doc.flavor = flavor;
    }
    return text::build_complex(doc);
  }

  inline GlobularComplex load_complex(std::string const&    path,
                                      std::optional<Flavor> flavor = std::nullopt) {
    return parse_complex(read_file(path), path, flavor);
  }

  // Paths, natpaths and families of a file, checked against cx.
  inline Loaded parse_paths(std::string const&     content,
                            GlobularComplex const& cx,
                            std::string const&     file = "<input>") {
    auto doc = text::parse_document(content, file);
    doc.file = file;
    Loaded out;
    for (auto const& n : doc.natpaths) {
      NaturalPath p = text::parse_natpath(n.body, file, n.line);
      try {
        cx.check_path(p, cx.cells().size(), "natpath '" + n.name + "'");
      } catch (Error const& e) {
        text::fail_at(e.code(), file, n.line, e.what());
      }
      if (!out.natpaths.emplace(n.name, std::move(p)).second) {
        text::fail_at(Errc::parse, file, n.line,
                      "duplicate natpath '" + n.name + "'");
      }
    }
    for (auto const& r : doc.paths) {
      auto it = out.natpaths.find(r.base);
      if (it == out.natpaths.end()) {
        text::fail_at(Errc::validation, file, r.line,
                      "unknown natpath '" + r.base + "'");
      }
      try {
        auto p = ExecutionPath::make(cx, it->second, PLMap::parse(r.reparam));
        if (!out.paths.emplace(r.name, std::move(p)).second) {
          text::fail_at(Errc::parse, file, r.line,
                        "duplicate path '" + r.name + "'");
        }
        out.path_order.push_back(r.name);
      } catch (Error const& e) {
        if (std::string_view(e.what()).starts_with(file + ":")) {
          throw;
        }
        text::fail_at(e.code(), file, r.line, e.what());
      }
    }
    for (auto const& r : doc.families) {
      PathFamily fam = text::parse_family(r, file);
      try {
        check_family(cx, fam);
      } catch (Error const& e) {
        text::fail_at(e.code(), file, r.line, e.what());
      }
      out.families.emplace(fam.name, std::move(fam));
    }
    return out;
  }

  // A file holding a whole complex plus its paths and families.
  inline Loaded load_all(std::string const&    path,
                         std::optional<Flavor> flavor = std::nullopt) {
    std::string     content = read_file(path);
    GlobularComplex cx      = parse_complex(content, path, flavor);
    Loaded          out     = parse_paths(content, cx, path);
    out.complex             = std::move(cx);
    return out;
  }

  // The cell records of a file, with natpath references resolved; the file
  // needs no space or state lines.
  inline std::vector<GlobularCell> parse_cells(std::string const& content,
                                               std::string const& file = "<input>") {
    auto doc = text::parse_document(content, file);
    doc.file = file;
    auto                      np = text::natpath_index(doc);
    std::vector<GlobularCell> out;
    for (auto const& r : doc.cells) {
      out.push_back(text::build_cell(r, doc, np));
    }
    return out;
  }

  inline std::string serialize(GlobularComplex const& cx) {
    std::ostringstream os;
    os << "space flavor=" << flavor_name(cx.flavor()) << "\n";
    for (auto const& s : cx.states()) {
      os << "state " << s << "\n";
    }
    std::map<std::string, NaturalPath> written;
    auto natpath = [&](NamedPath const& np) {
      if (written.emplace(np.name, np.path).second) {
        os << "natpath " << np.name << " : " << np.path.str() << "\n";
      } else if (written[np.name] != np.path) {
        fail(Errc::validation,
             "two different paths share the name '" + np.name + "'");
      }
    };
    for (auto const& c : cx.cells()) {
      std::string a = std::visit(
          [&](auto const& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, attach::Endpoints>) {
              return "endpoints";
            } else if constexpr (std::is_same_v<T, attach::TwoPaths>) {
              natpath(v.minus);
              natpath(v.plus);
              return "two_paths(" + v.minus.name + "," + v.plus.name + ")";
            } else if constexpr (std::is_same_v<T, attach::Constant>) {
              natpath(v.path);
              return "const(" + v.path.name + ")";
            } else {
              return "psi(" + v.upper + "," + v.lower + ")";
            }
          },
          c.attach);
      os << "cell " << c.id << " dim=" << c.disk_dim << " src=" << c.src
         << " tgt=" << c.tgt << " attach=" << a << "\n";
    }
    return os.str();
  }

}  // namespace dpath

#endif  // DPATH_TEXT_FORMAT_HPP_

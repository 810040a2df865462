// Copyright 2026 The UnJoin Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unjoin/correction.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <tuple>

#include "unjoin/edit_distance.hpp"
#include "unjoin/sql_lexer.hpp"
#include "unjoin/util.hpp"

namespace unjoin {

size_t CorrectionThreshold(size_t candidate_length) {
  size_t scaled = (candidate_length * 4 + 9) / 10;  // ceil(0.4 * len)
  return std::max<size_t>(2, scaled);
}

bool IsEligibleReplacement(std::string_view token, std::string_view candidate, size_t distance) {
  if (distance <= CorrectionThreshold(candidate.size())) return true;
  auto shorter = token.size() < candidate.size() ? token : candidate;
  auto longer = token.size() < candidate.size() ? candidate : token;
  return shorter.size() >= 3 && IEquals(longer.substr(0, shorter.size()), shorter);
}

namespace {

using sql::Token;
using sql::TokenKind;

/// The names a correction pass may use.
struct NameUniverse {
  bool simplified = false;
  std::string virtual_table;                 // simplified mode only
  std::vector<std::string> from_names;       // valid in FROM position
  std::vector<std::pair<std::string, std::vector<std::string>>> tables;  // qualifier -> columns

  const std::pair<std::string, std::vector<std::string>>* FindTable(std::string_view name) const {
    for (const auto& t : tables)
      if (IEquals(t.first, name)) return &t;
    return nullptr;
  }
  bool IsFromName(std::string_view name) const {
    return std::any_of(from_names.begin(), from_names.end(), [&](const auto& n) { return IEquals(n, name); });
  }
  bool IsAnyColumn(std::string_view name) const {
    for (const auto& t : tables)
      for (const auto& c : t.second)
        if (IEquals(c, name)) return true;
    return false;
  }
};

enum class SiteKind { kTable, kChain, kColumn };

struct Site {
  SiteKind kind;
  std::vector<size_t> parts;  // token indices of the dotted chain
};

enum class Clause { kNone, kSelect, kFrom, kWith, kOther };
enum class Expect { kNone, kTable, kAlias, kAliasAfterAs, kCteName, kCteAfterName, kSelectAlias, kTypeName };

struct Frame {
  Clause clause = Clause::kNone;
  Expect expect = Expect::kNone;
  bool from_item = false;
  bool cast = false;
  bool cte_columns = false;
  long last_table_site = -1;
};

struct Classification {
  std::vector<Site> sites;
  std::map<std::string, long> aliases;  // lowercase alias -> table site (-1: derived)
  std::set<std::string> ctes;
  std::set<std::string> select_aliases;
};

bool IsNameToken(const Token& t) {
  if (t.kind == TokenKind::kQuotedIdent || t.kind == TokenKind::kDoubleQuoted) return true;
  return t.kind == TokenKind::kWord && !sql::IsKeywordLike(t.text);
}

Classification Classify(const std::vector<Token>& toks) {
  Classification out;
  std::vector<Frame> frames(1);
  for (size_t i = 0; i + 1 < toks.size(); ++i) {
    const Token& t = toks[i];
    Frame& f = frames.back();
    if (t.kind == TokenKind::kWord && sql::IsKeywordLike(t.text)) {
      auto kw = ToUpper(t.text);
      if (kw == "SELECT") {
        f.clause = Clause::kSelect;
        f.expect = Expect::kNone;
      } else if (kw == "FROM") {
        f.clause = Clause::kFrom;
        f.expect = Expect::kTable;
      } else if (kw == "JOIN") {
        f.clause = Clause::kFrom;
        f.expect = Expect::kTable;
      } else if (kw == "WITH") {
        f.clause = Clause::kWith;
        f.expect = Expect::kCteName;
      } else if (kw == "AS") {
        if (f.expect == Expect::kAlias) f.expect = Expect::kAliasAfterAs;
        else if (f.clause == Clause::kWith) f.expect = Expect::kNone;
        else if (f.cast) f.expect = Expect::kTypeName;
        else f.expect = Expect::kSelectAlias;
      } else if (kw == "WHERE" || kw == "GROUP" || kw == "HAVING" || kw == "ORDER" || kw == "LIMIT" ||
                 kw == "OFFSET" || kw == "WINDOW") {
        f.clause = Clause::kOther;
        f.expect = Expect::kNone;
      } else if (kw == "UNION" || kw == "INTERSECT" || kw == "EXCEPT") {
        f.clause = Clause::kNone;
        f.expect = Expect::kNone;
      } else if (kw == "RECURSIVE" && f.clause == Clause::kWith) {
        // keep expecting the CTE name
      } else if (f.expect != Expect::kTable && f.expect != Expect::kCteName) {
        f.expect = Expect::kNone;
      }
      continue;
    }
    if (t.IsPunct("(")) {
      Frame inner;
      if (i > 0 && toks[i - 1].IsWord("CAST")) inner.cast = true;
      if (f.expect == Expect::kTable) {
        inner.from_item = true;
        f.expect = Expect::kNone;
      } else if (f.expect == Expect::kCteAfterName) {
        inner.cte_columns = true;
      }
      frames.push_back(inner);
      continue;
    }
    if (t.IsPunct(")")) {
      if (frames.size() > 1) {
        bool from_item = frames.back().from_item;
        frames.pop_back();
        if (from_item) {
          frames.back().expect = Expect::kAlias;
          frames.back().last_table_site = -1;
        }
      }
      continue;
    }
    if (t.IsPunct(",")) {
      if (f.clause == Clause::kFrom) f.expect = Expect::kTable;
      else if (f.clause == Clause::kWith && f.expect == Expect::kNone) f.expect = Expect::kCteName;
      else if (f.expect != Expect::kCteAfterName) f.expect = Expect::kNone;
      continue;
    }
    if (!IsNameToken(t)) {
      if (f.expect == Expect::kAlias || f.expect == Expect::kSelectAlias || f.expect == Expect::kTypeName)
        f.expect = Expect::kNone;
      continue;
    }

    // Dotted chain a.b.c; a trailing `.*` ends the chain.
    std::vector<size_t> parts{i};
    size_t j = i;
    while (j + 2 < toks.size() && toks[j + 1].IsPunct(".") && IsNameToken(toks[j + 2])) {
      j += 2;
      parts.push_back(j);
    }
    bool star = j + 2 < toks.size() && toks[j + 1].IsPunct(".") && toks[j + 2].IsPunct("*");
    const Token& next = toks[j + 1];
    size_t resume = j;

    if (next.IsPunct("(") && parts.size() == 1 && f.expect != Expect::kCteName) {
      // function call (or table-valued function in FROM)
      if (f.expect == Expect::kTable) f.expect = Expect::kAlias, f.last_table_site = -1;
      i = resume;
      continue;
    }
    auto lower = ToLower(toks[parts.back()].value);
    switch (f.expect) {
      case Expect::kTable:
        out.sites.push_back({SiteKind::kTable, parts});
        f.last_table_site = static_cast<long>(out.sites.size() - 1);
        f.expect = Expect::kAlias;
        break;
      case Expect::kAlias:
      case Expect::kAliasAfterAs:
        out.aliases[ToLower(t.value)] = f.last_table_site;
        f.expect = Expect::kNone;
        break;
      case Expect::kCteName:
        out.ctes.insert(ToLower(t.value));
        f.expect = Expect::kCteAfterName;
        break;
      case Expect::kSelectAlias:
        out.select_aliases.insert(ToLower(t.value));
        f.expect = Expect::kNone;
        break;
      case Expect::kTypeName:
        f.expect = Expect::kNone;
        break;
      case Expect::kCteAfterName:
      case Expect::kNone: {
        if (f.cte_columns) break;
        if (star) {
          out.sites.push_back({SiteKind::kChain, parts});
          break;
        }
        // Implicit select-list alias: `expr name` followed by `,` / FROM / end.
        if (f.clause == Clause::kSelect && parts.size() == 1 && i > 0) {
          const Token& prev = toks[i - 1];
          bool prev_value = IsNameToken(prev) || prev.IsPunct(")") || prev.kind == TokenKind::kNumber ||
                            prev.kind == TokenKind::kString;
          bool next_ends = next.IsPunct(",") || next.IsWord("FROM") || next.kind == TokenKind::kEnd ||
                           next.IsPunct(")") || next.IsPunct(";");
          if (prev_value && next_ends) {
            out.select_aliases.insert(lower);
            break;
          }
        }
        out.sites.push_back({parts.size() == 1 ? SiteKind::kColumn : SiteKind::kChain, parts});
        break;
      }
    }
    i = resume;
  }
  return out;
}

struct Candidate {
  std::string name;
  bool local = false;
};

/// Nearest eligible candidate: smallest distance, then local, then lexicographic.
std::optional<std::pair<std::string, size_t>> Nearest(std::string_view token, const std::vector<Candidate>& candidates) {
  std::optional<std::tuple<size_t, bool, std::string, std::string>> best;
  for (const auto& c : candidates) {
    size_t d = Levenshtein(token, c.name);
    if (d == 0 || !IsEligibleReplacement(token, c.name, d)) continue;
    auto key = std::make_tuple(d, !c.local, ToLower(c.name), c.name);
    if (!best || key < *best) best = key;
  }
  if (!best) return std::nullopt;
  return std::make_pair(std::get<3>(*best), std::get<0>(*best));
}

bool NeedsQuoting(std::string_view name) {
  if (name.empty() || std::isdigit(static_cast<unsigned char>(name[0]))) return true;
  for (unsigned char c : name)
    if (!(std::isalnum(c) || c == '_')) return true;
  return sql::IsKeywordLike(name);
}

/// Renders `name` in the quoting style of `original`.
std::string Requote(const Token& original, std::string_view name) {
  auto wrap = [&](char open, char close) {
    std::string out(1, open);
    for (char c : name) {
      out.push_back(c);
      if (c == close && open == close) out.push_back(c);
    }
    out.push_back(close);
    return out;
  };
  if (original.kind == TokenKind::kQuotedIdent) return original.text.front() == '[' ? wrap('[', ']') : wrap('`', '`');
  if (original.kind == TokenKind::kDoubleQuoted) return wrap('"', '"');
  return NeedsQuoting(name) ? wrap('`', '`') : std::string(name);
}

class Corrector {
 public:
  Corrector(std::string_view sql, NameUniverse universe)
      : sql_(sql), toks_(sql::Tokenize(sql)), u_(std::move(universe)) {}

  CorrectionResult Run() {
    auto cls = Classify(toks_);
    // Tables first: columns resolve against the corrected table names.
    std::vector<std::optional<std::string>> table_of_site(cls.sites.size());
    std::set<std::string> referenced;  // lowercase qualifier-table names in use
    for (size_t s = 0; s < cls.sites.size(); ++s) {
      const auto& site = cls.sites[s];
      if (site.kind != SiteKind::kTable) continue;
      const Token& tok = toks_[site.parts.back()];
      if (site.parts.size() == 1 && cls.ctes.count(ToLower(tok.value))) continue;
      if (u_.IsFromName(tok.value)) {
        table_of_site[s] = CanonicalFrom(tok.value);
      } else if (auto fixed = Repair(tok, FromCandidates())) {
        table_of_site[s] = *fixed;
      }
      if (table_of_site[s] && !u_.simplified) referenced.insert(ToLower(*table_of_site[s]));
    }
    auto alias_table = [&](const std::string& alias) -> std::optional<std::optional<std::string>> {
      auto it = cls.aliases.find(alias);
      if (it == cls.aliases.end()) return std::nullopt;
      if (it->second < 0) return std::optional<std::string>{};
      return table_of_site[static_cast<size_t>(it->second)];
    };
    if (u_.simplified) {
      for (const auto& site : cls.sites) {
        if (site.kind != SiteKind::kChain || site.parts.size() < 2) continue;
        const auto& q = toks_[site.parts[site.parts.size() - 2]].value;
        if (u_.FindTable(q)) referenced.insert(ToLower(q));
      }
    }

    for (const auto& site : cls.sites) {
      if (site.kind == SiteKind::kChain) CorrectChain(site, cls, alias_table, referenced);
      else if (site.kind == SiteKind::kColumn) CorrectColumn(toks_[site.parts[0]], cls, referenced);
    }

    std::sort(edits_.begin(), edits_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    CorrectionResult result;
    size_t cursor = 0;
    for (const auto& [tok_index, text] : edits_) {
      const Token& t = toks_[tok_index];
      result.sql.append(sql_.substr(cursor, t.offset - cursor));
      result.sql += text;
      cursor = t.offset + t.length;
    }
    result.sql.append(sql_.substr(cursor));
    result.report = std::move(report_);
    return result;
  }

 private:
  std::string CanonicalFrom(std::string_view name) const {
    for (const auto& n : u_.from_names)
      if (IEquals(n, name)) return n;
    return std::string(name);
  }

  std::vector<Candidate> FromCandidates() const {
    std::vector<Candidate> out;
    for (const auto& n : u_.from_names) out.push_back({n, false});
    return out;
  }

  std::vector<Candidate> QualifierCandidates(const std::set<std::string>& referenced) const {
    std::vector<Candidate> out;
    for (const auto& t : u_.tables) out.push_back({t.first, referenced.count(ToLower(t.first)) > 0});
    return out;
  }

  /// Records a replacement for `tok` if an eligible candidate exists; returns the new name.
  std::optional<std::string> Repair(const Token& tok, const std::vector<Candidate>& candidates) {
    auto best = Nearest(tok.value, candidates);
    if (!best) {
      Unresolved(tok.text);
      return std::nullopt;
    }
    size_t index = static_cast<size_t>(&tok - toks_.data());
    edits_.emplace_back(index, Requote(tok, best->first));
    report_.substitutions.push_back({tok.text, best->first, best->second, tok.offset});
    return best->first;
  }

  void Unresolved(const std::string& text) {
    if (std::find(report_.unresolved.begin(), report_.unresolved.end(), text) == report_.unresolved.end())
      report_.unresolved.push_back(text);
  }

  const std::vector<std::string>* ColumnsOf(std::string_view table) const {
    const auto* t = u_.FindTable(table);
    return t ? &t->second : nullptr;
  }

  void CorrectColumnIn(const Token& tok, std::string_view table) {
    const auto* cols = ColumnsOf(table);
    if (!cols) return;
    for (const auto& c : *cols)
      if (IEquals(c, tok.value)) return;
    std::vector<Candidate> candidates;
    for (const auto& c : *cols) candidates.push_back({c, true});
    Repair(tok, candidates);
  }

  template <typename AliasFn>
  void CorrectChain(const Site& site, const Classification& cls, AliasFn alias_table,
                    const std::set<std::string>& referenced) {
    std::vector<size_t> parts = site.parts;
    bool star = false;
    {
      size_t last = parts.back();
      star = last + 2 < toks_.size() && toks_[last + 1].IsPunct(".") && toks_[last + 2].IsPunct("*");
    }
    if (u_.simplified) {
      // Drop a leading virtual-table name or alias.
      const auto& head = toks_[parts[0]].value;
      auto head_alias = alias_table(ToLower(head));
      bool head_is_virtual = IEquals(head, u_.virtual_table) ||
                             (head_alias && *head_alias && IEquals(**head_alias, u_.virtual_table));
      if (head_is_virtual && parts.size() >= 2) parts.erase(parts.begin());
      if (parts.size() == 1 && !star) return CorrectColumn(toks_[parts[0]], cls, referenced);
    }
    if (star) {
      // Qualifier only.
      const Token& q = toks_[parts.back()];
      auto lower = ToLower(q.value);
      if (alias_table(lower) || cls.ctes.count(lower) || u_.FindTable(q.value) || u_.IsFromName(q.value)) return;
      Repair(q, QualifierCandidates(referenced));
      return;
    }
    if (parts.size() > 3) return;
    const Token& q = toks_[parts[parts.size() - 2]];
    const Token& c = toks_[parts.back()];
    auto ql = ToLower(q.value);
    if (cls.ctes.count(ql)) return;
    if (auto resolved = alias_table(ql)) {
      if (!*resolved) return;  // derived table or unresolved table
      if (u_.simplified) return;
      return CorrectColumnIn(c, **resolved);
    }
    if (u_.FindTable(q.value)) return CorrectColumnIn(c, u_.FindTable(q.value)->first);
    if (auto fixed = Repair(q, QualifierCandidates(referenced))) CorrectColumnIn(c, *fixed);
  }

  void CorrectColumn(const Token& tok, const Classification& cls, const std::set<std::string>& referenced) {
    auto lower = ToLower(tok.value);
    if (tok.kind == TokenKind::kDoubleQuoted) return;  // may be a string literal
    if (cls.select_aliases.count(lower) || cls.aliases.count(lower) || cls.ctes.count(lower)) return;
    if (u_.IsFromName(tok.value) || u_.FindTable(tok.value)) return;
    if (u_.IsAnyColumn(tok.value)) return;
    if (lower == "rowid" || lower == "oid" || lower == "_rowid_") return;
    if (u_.simplified && tok.value.find('.') != std::string::npos) return CorrectDotted(tok, referenced);
    std::vector<Candidate> candidates;
    for (const auto& t : u_.tables) {
      bool local = referenced.count(ToLower(t.first)) > 0;
      if (!u_.simplified && !referenced.empty() && !local) continue;
      for (const auto& c : t.second) candidates.push_back({c, local});
    }
    Repair(tok, candidates);
  }

  /// A single quoted token holding `Table.Column` in simplified mode.
  void CorrectDotted(const Token& tok, const std::set<std::string>& referenced) {
    auto dot = tok.value.find('.');
    std::string table = tok.value.substr(0, dot);
    std::string column = tok.value.substr(dot + 1);
    const auto* t = u_.FindTable(table);
    if (t) {
      for (const auto& c : t->second)
        if (IEquals(c, column)) return;
    }
    std::vector<Candidate> candidates;
    for (const auto& ot : u_.tables)
      for (const auto& c : ot.second) candidates.push_back({ot.first + "." + c, referenced.count(ToLower(ot.first)) > 0});
    Repair(tok, candidates);
  }

  std::string_view sql_;
  std::vector<Token> toks_;
  NameUniverse u_;
  std::vector<std::pair<size_t, std::string>> edits_;
  CorrectionReport report_;
};

}  // namespace

CorrectionResult correct_identifiers(std::string_view sql, const DatabaseSchema& schema) {
  NameUniverse u;
  for (const auto& t : schema.tables()) {
    u.from_names.push_back(t.name);
    std::vector<std::string> cols;
    for (const auto& c : t.columns) cols.push_back(c.name);
    u.tables.emplace_back(t.name, std::move(cols));
  }
  return Corrector(sql, std::move(u)).Run();
}

CorrectionResult correct_identifiers(std::string_view sql, const SimplifiedSchema& schema) {
  NameUniverse u;
  u.simplified = true;
  u.virtual_table = schema.virtual_table_name();
  u.from_names.push_back(schema.virtual_table_name());
  for (const auto& e : schema.entries()) {
    if (u.tables.empty() || !IEquals(u.tables.back().first, e.origin.table)) u.tables.emplace_back(e.origin.table, std::vector<std::string>{});
    u.tables.back().second.push_back(e.origin.column);
  }
  return Corrector(sql, std::move(u)).Run();
}

}  // namespace unjoin

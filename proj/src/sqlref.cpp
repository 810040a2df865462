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

#include "unjoin/sqlref.hpp"

#include <algorithm>
#include <map>

#include "unjoin/util.hpp"

namespace unjoin {

void RefSet::AddColumn(std::string_view table, std::string_view column) {
  auto t = ToLower(table);
  tables.insert(t);
  columns.insert(t + "." + ToLower(column));
}

void RefSet::AddTable(std::string_view table) { tables.insert(ToLower(table)); }

namespace {

using sql::Expr;
using sql::ExprKind;
using sql::Query;
using sql::SelectCore;
using sql::TableRef;

struct ScopeEntry {
  enum class Kind { kBase, kDerived, kVirtual, kUnknown };
  Kind kind = Kind::kUnknown;
  std::string exposed;    // lowercase alias, or table name when unaliased
  std::string base_name;  // lowercase underlying table name (base and virtual)
  const TableDef* base = nullptr;
  std::vector<std::string> derived_columns;  // lowercase
};

struct Scope {
  const Scope* parent = nullptr;
  std::vector<ScopeEntry> entries;
  std::vector<std::string> select_aliases;

  bool HasAlias(const std::string& name) const {
    return std::find(select_aliases.begin(), select_aliases.end(), name) != select_aliases.end();
  }
};

struct CteEnv {
  const CteEnv* parent = nullptr;
  std::map<std::string, std::vector<std::string>> ctes;

  const std::vector<std::string>* Find(const std::string& name) const {
    for (const auto* e = this; e; e = e->parent) {
      auto it = e->ctes.find(name);
      if (it != e->ctes.end()) return &it->second;
    }
    return nullptr;
  }
};

bool IsRowidAlias(const std::string& c) { return c == "rowid" || c == "oid" || c == "_rowid_"; }

class Resolver {
 public:
  Resolver(const DatabaseSchema* schema, const SimplifiedSchema* simplified)
      : schema_(schema), simplified_(simplified) {}

  void Run(const Query& q) {
    CteEnv root;
    ResolveQuery(q, nullptr, &root);
  }

  RefSet refs;
  std::vector<std::string> unresolved;
  std::vector<std::string> ambiguous;

 private:
  void Unresolved(std::string name) {
    if (std::find(unresolved.begin(), unresolved.end(), name) == unresolved.end()) unresolved.push_back(std::move(name));
  }

  std::vector<std::string> ResolveQuery(const Query& q, const Scope* outer, const CteEnv* env) {
    CteEnv local;
    local.parent = env;
    for (const auto& cte : q.ctes) {
      auto name = ToLower(cte.name);
      std::vector<std::string> declared;
      for (const auto& c : cte.columns) declared.push_back(ToLower(c));
      if (q.recursive) local.ctes[name] = declared;
      auto produced = ResolveQuery(*cte.query, outer, &local);
      local.ctes[name] = declared.empty() ? produced : declared;
    }
    std::vector<std::string> outputs;
    for (size_t i = 0; i < q.cores.size(); ++i) {
      auto cols = ResolveCore(q.cores[i], outer, &local, i == 0 ? &q.order_by : nullptr);
      if (i == 0) outputs = std::move(cols);
    }
    if (q.limit) ResolveExprIn(*q.limit, outer, &local);
    if (q.offset) ResolveExprIn(*q.offset, outer, &local);
    return outputs;
  }

  void ResolveExprIn(const Expr& e, const Scope* scope, const CteEnv* env) {
    Scope empty;
    empty.parent = scope;
    ResolveExpr(e, empty, env, false);
  }

  std::vector<std::string> ResolveCore(const SelectCore& core, const Scope* outer, const CteEnv* env,
                                       const std::vector<sql::OrderTerm>* order_by) {
    if (core.nested) return ResolveQuery(*core.nested, outer, env);
    Scope scope;
    scope.parent = outer;
    if (!core.values.empty()) {
      std::vector<std::string> outputs;
      for (const auto& row : core.values)
        for (const auto& e : row) ResolveExpr(*e, scope, env, false);
      for (size_t i = 0; i < core.values.front().size(); ++i) outputs.push_back("column" + std::to_string(i + 1));
      return outputs;
    }
    if (core.from) AddFrom(*core.from, scope, outer, env);
    for (const auto& item : core.items)
      if (!item.alias.empty()) scope.select_aliases.push_back(ToLower(item.alias));

    std::vector<std::string> outputs;
    for (const auto& item : core.items) {
      if (item.star) {
        ExpandStar(item.star_qualifier, scope, outputs);
        continue;
      }
      ResolveExpr(*item.expr, scope, env, false);
      if (!item.alias.empty()) outputs.push_back(ToLower(item.alias));
      else if (item.expr->kind == ExprKind::kColumn) outputs.push_back(ToLower(item.expr->names.back()));
      else outputs.emplace_back();
    }
    if (core.where) ResolveExpr(*core.where, scope, env, false);
    for (const auto& g : core.group_by) ResolveExpr(*g, scope, env, false);
    if (core.having) ResolveExpr(*core.having, scope, env, false);
    for (const auto& w : core.window_terms) ResolveExpr(*w, scope, env, false);
    if (order_by)
      for (const auto& term : *order_by) ResolveExpr(*term.expr, scope, env, true);
    return outputs;
  }

  void AddFrom(const TableRef& ref, Scope& scope, const Scope* outer, const CteEnv* env) {
    switch (ref.kind) {
      case TableRef::Kind::kTable: {
        ScopeEntry entry;
        const std::string& raw = ref.name.back();
        auto lower = ToLower(raw);
        entry.exposed = ref.alias.empty() ? lower : ToLower(ref.alias);
        entry.base_name = lower;
        const std::vector<std::string>* cte = ref.name.size() == 1 ? env->Find(lower) : nullptr;
        if (cte) {
          entry.kind = ScopeEntry::Kind::kDerived;
          entry.derived_columns = *cte;
        } else if (simplified_) {
          if (IEquals(raw, simplified_->virtual_table_name())) {
            entry.kind = ScopeEntry::Kind::kVirtual;
          } else {
            Unresolved(raw);
          }
        } else if (const auto* t = schema_->FindTable(raw)) {
          entry.kind = ScopeEntry::Kind::kBase;
          entry.base = t;
          refs.AddTable(t->name);
        } else {
          Unresolved(raw);
        }
        scope.entries.push_back(std::move(entry));
        break;
      }
      case TableRef::Kind::kSubquery: {
        ScopeEntry entry;
        entry.kind = ScopeEntry::Kind::kDerived;
        entry.exposed = ToLower(ref.alias);
        entry.derived_columns = ResolveQuery(*ref.subquery, outer, env);
        scope.entries.push_back(std::move(entry));
        break;
      }
      case TableRef::Kind::kFunction: {
        for (const auto& a : ref.function_args) ResolveExprIn(*a, outer, env);
        ScopeEntry entry;
        entry.kind = ScopeEntry::Kind::kDerived;
        entry.exposed = ToLower(ref.alias.empty() ? ref.name.back() : ref.alias);
        scope.entries.push_back(std::move(entry));
        break;
      }
      case TableRef::Kind::kJoin: {
        size_t first = scope.entries.size();
        AddFrom(*ref.left, scope, outer, env);
        AddFrom(*ref.right, scope, outer, env);
        if (ref.on) ResolveExpr(*ref.on, scope, env, false);
        for (const auto& col : ref.using_columns) {
          for (size_t i = first; i < scope.entries.size(); ++i) {
            const auto& e = scope.entries[i];
            if (e.kind == ScopeEntry::Kind::kBase && e.base->FindColumn(col)) refs.AddColumn(e.base->name, e.base->FindColumn(col)->name);
          }
        }
        break;
      }
    }
  }

  void ExpandStar(const std::vector<std::string>& qualifier, const Scope& scope, std::vector<std::string>& outputs) {
    auto expand = [&](const ScopeEntry& e) {
      switch (e.kind) {
        case ScopeEntry::Kind::kBase:
          for (const auto& c : e.base->columns) {
            refs.AddColumn(e.base->name, c.name);
            outputs.push_back(ToLower(c.name));
          }
          break;
        case ScopeEntry::Kind::kVirtual:
          for (const auto& s : simplified_->entries()) {
            refs.AddColumn(s.origin.table, s.origin.column);
            outputs.push_back(ToLower(s.qualified));
          }
          break;
        case ScopeEntry::Kind::kDerived:
          outputs.insert(outputs.end(), e.derived_columns.begin(), e.derived_columns.end());
          break;
        case ScopeEntry::Kind::kUnknown:
          break;
      }
    };
    if (qualifier.empty()) {
      for (const auto& e : scope.entries) expand(e);
      return;
    }
    auto q = ToLower(qualifier.back());
    for (const auto& e : scope.entries) {
      if (e.exposed == q) {
        expand(e);
        return;
      }
    }
    Unresolved(qualifier.back() + ".*");
  }

  void ResolveExpr(const Expr& e, const Scope& scope, const CteEnv* env, bool alias_first) {
    if (e.kind == ExprKind::kColumn) {
      if (simplified_) ResolveSimplifiedColumn(e, scope, alias_first);
      else ResolveColumn(e, scope, alias_first);
      return;
    }
    for (const auto& a : e.args) ResolveExpr(*a, scope, env, alias_first);
    for (const auto& a : e.window_args) ResolveExpr(*a, scope, env, alias_first);
    if (e.subquery) ResolveQuery(*e.subquery, &scope, env);
  }

  void ResolveColumn(const Expr& e, const Scope& scope, bool alias_first) {
    std::vector<std::string> parts = e.names;
    if (parts.size() == 3) parts.erase(parts.begin());
    if (parts.size() > 3 || parts.empty()) {
      Unresolved(JoinNames(e.names));
      return;
    }
    if (parts.size() == 1) {
      auto c = ToLower(parts[0]);
      if (alias_first && scope.HasAlias(c)) return;
      for (const Scope* s = &scope; s; s = s->parent) {
        std::vector<const TableDef*> owners;
        bool derived = false;
        for (const auto& entry : s->entries) {
          if (entry.kind == ScopeEntry::Kind::kBase && entry.base->FindColumn(c)) {
            if (std::find(owners.begin(), owners.end(), entry.base) == owners.end()) owners.push_back(entry.base);
          } else if (entry.kind == ScopeEntry::Kind::kDerived &&
                     std::find(entry.derived_columns.begin(), entry.derived_columns.end(), c) !=
                         entry.derived_columns.end()) {
            derived = true;
          }
        }
        if (!owners.empty()) {
          for (const auto* t : owners) refs.AddColumn(t->name, t->FindColumn(c)->name);
          if (owners.size() > 1) ambiguous.push_back(parts[0]);
          return;
        }
        if (derived) return;
        if (s->HasAlias(c)) return;
      }
      if (e.double_quoted || IsRowidAlias(c)) return;
      Unresolved(parts[0]);
      return;
    }
    auto q = ToLower(parts[0]);
    auto c = ToLower(parts[1]);
    for (int pass = 0; pass < 2; ++pass) {
      for (const Scope* s = &scope; s; s = s->parent) {
        for (const auto& entry : s->entries) {
          bool match = pass == 0 ? entry.exposed == q : (!entry.base_name.empty() && entry.base_name == q);
          if (!match) continue;
          if (entry.kind == ScopeEntry::Kind::kBase) {
            if (const auto* col = entry.base->FindColumn(c)) refs.AddColumn(entry.base->name, col->name);
            else if (!IsRowidAlias(c)) Unresolved(entry.base->name + "." + parts[1]);
          }
          return;
        }
      }
    }
    Unresolved(parts[0] + "." + parts[1]);
  }

  void AddSimplified(const SimplifiedColumn& s) { refs.AddColumn(s.origin.table, s.origin.column); }

  bool ResolveByColumnPart(const std::string& c) {
    const SimplifiedColumn* found = nullptr;
    for (const auto& s : simplified_->entries()) {
      if (IEquals(s.origin.column, c)) {
        if (found) return false;
        found = &s;
      }
    }
    if (!found) return false;
    AddSimplified(*found);
    return true;
  }

  bool VirtualInScope(const Scope& scope, const std::string* exposed = nullptr) const {
    for (const Scope* s = &scope; s; s = s->parent)
      for (const auto& entry : s->entries)
        if (entry.kind == ScopeEntry::Kind::kVirtual && (!exposed || entry.exposed == *exposed || entry.base_name == *exposed))
          return true;
    return false;
  }

  bool InDerived(const Scope& scope, const std::string& c, const std::string* exposed = nullptr) const {
    for (const Scope* s = &scope; s; s = s->parent)
      for (const auto& entry : s->entries) {
        if (entry.kind != ScopeEntry::Kind::kDerived) continue;
        if (exposed) {
          if (entry.exposed == *exposed) return true;
          continue;
        }
        if (std::find(entry.derived_columns.begin(), entry.derived_columns.end(), c) != entry.derived_columns.end())
          return true;
      }
    return false;
  }

  void ResolveSimplifiedColumn(const Expr& e, const Scope& scope, bool alias_first) {
    const auto& parts = e.names;
    if (parts.size() == 3) {
      auto head = ToLower(parts[0]);
      if (VirtualInScope(scope, &head)) {
        if (const auto* s = simplified_->Find(parts[1] + "." + parts[2])) return AddSimplified(*s);
      }
      Unresolved(JoinNames(parts));
      return;
    }
    if (parts.size() == 2) {
      if (const auto* s = simplified_->Find(parts[0] + "." + parts[1])) return AddSimplified(*s);
      auto head = ToLower(parts[0]);
      if (VirtualInScope(scope, &head)) {
        if (const auto* s = simplified_->Find(parts[1])) return AddSimplified(*s);
        if (ResolveByColumnPart(parts[1])) return;
      } else if (InDerived(scope, ToLower(parts[1]), &head)) {
        return;
      }
      Unresolved(parts[0] + "." + parts[1]);
      return;
    }
    if (parts.size() != 1) {
      Unresolved(JoinNames(parts));
      return;
    }
    const auto& name = parts[0];
    auto c = ToLower(name);
    if (name.find('.') != std::string::npos) {
      if (const auto* s = simplified_->Find(name)) return AddSimplified(*s);
      if (e.double_quoted) return;
      Unresolved(name);
      return;
    }
    if (alias_first && scope.HasAlias(c)) return;
    if (InDerived(scope, c)) return;
    for (const Scope* s = &scope; s; s = s->parent)
      if (s->HasAlias(c)) return;
    if (VirtualInScope(scope) && ResolveByColumnPart(name)) return;
    if (e.double_quoted || IsRowidAlias(c)) return;
    Unresolved(name);
  }

  static std::string JoinNames(const std::vector<std::string>& parts) {
    std::string out;
    for (const auto& p : parts) out += (out.empty() ? "" : ".") + p;
    return out;
  }

  const DatabaseSchema* schema_;
  const SimplifiedSchema* simplified_;
};

}  // namespace

RefExtraction extract_refs(std::string_view sql, const DatabaseSchema& schema) {
  auto query = sql::Parse(sql);
  Resolver r(&schema, nullptr);
  r.Run(*query);
  return {std::move(r.refs), std::move(r.unresolved), std::move(r.ambiguous)};
}

SimplifiedRefExtraction extract_refs_simplified(std::string_view sql, const SimplifiedSchema& s) {
  auto query = sql::Parse(sql);
  Resolver r(nullptr, &s);
  r.Run(*query);
  return {std::move(r.refs), std::move(r.unresolved)};
}

bool is_multi_table(std::string_view gold_sql, const DatabaseSchema& schema) {
  return extract_refs(gold_sql, schema).refs.tables.size() >= 2;
}

}  // namespace unjoin

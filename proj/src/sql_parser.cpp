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

#include <string_view>

#include "unjoin/sql_ast.hpp"
#include "unjoin/sql_lexer.hpp"
#include "unjoin/util.hpp"

namespace unjoin::sql {

Expr::~Expr() = default;
TableRef::~TableRef() = default;

namespace {

class Parser {
 public:
  explicit Parser(std::string_view sql) : tokens_(Tokenize(sql)) {}

  std::unique_ptr<Query> ParseStatement() {
    for (const auto& t : tokens_)
      if (t.unterminated) throw ParseError("unterminated quoted token", t.offset);
    auto q = ParseQuery();
    while (Peek().IsPunct(";")) Advance();
    if (Peek().kind != TokenKind::kEnd) Fail("unexpected '" + Peek().text + "' after statement");
    return q;
  }

 private:
  // --- token helpers -------------------------------------------------------

  const Token& Peek(size_t ahead = 0) const {
    size_t i = pos_ + ahead;
    return i < tokens_.size() ? tokens_[i] : tokens_.back();
  }
  const Token& Advance() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  bool AcceptWord(std::string_view kw) {
    if (Peek().IsWord(kw)) {
      Advance();
      return true;
    }
    return false;
  }
  bool AcceptPunct(std::string_view p) {
    if (Peek().IsPunct(p)) {
      Advance();
      return true;
    }
    return false;
  }
  [[noreturn]] void Fail(const std::string& msg) const { throw ParseError(msg, Peek().offset); }
  void ExpectWord(std::string_view kw) {
    if (!AcceptWord(kw)) Fail("expected " + std::string(kw) + " but found '" + Describe(Peek()) + "'");
  }
  void ExpectPunct(std::string_view p) {
    if (!AcceptPunct(p)) Fail("expected '" + std::string(p) + "' but found '" + Describe(Peek()) + "'");
  }
  static std::string Describe(const Token& t) { return t.kind == TokenKind::kEnd ? "end of input" : t.text; }

  /// A token that can name a table, column or alias.
  bool IsName(const Token& t) const {
    if (t.kind == TokenKind::kQuotedIdent || t.kind == TokenKind::kDoubleQuoted) return true;
    return t.kind == TokenKind::kWord && !IsReservedWord(t.text);
  }
  std::string TakeName() {
    if (!IsName(Peek())) Fail("expected a name but found '" + Describe(Peek()) + "'");
    return Advance().value;
  }
  bool StartsQuery(size_t ahead = 0) const {
    const auto& t = Peek(ahead);
    return t.IsWord("SELECT") || t.IsWord("WITH") || t.IsWord("VALUES");
  }

  // --- queries -------------------------------------------------------------

  std::unique_ptr<Query> ParseQuery() {
    auto q = std::make_unique<Query>();
    if (AcceptWord("WITH")) {
      q->recursive = AcceptWord("RECURSIVE");
      do {
        CommonTableExpr cte;
        cte.name = TakeName();
        if (AcceptPunct("(")) {
          do cte.columns.push_back(TakeName());
          while (AcceptPunct(","));
          ExpectPunct(")");
        }
        ExpectWord("AS");
        if (AcceptWord("NOT")) ExpectWord("MATERIALIZED");
        else AcceptWord("MATERIALIZED");
        ExpectPunct("(");
        cte.query = ParseQuery();
        ExpectPunct(")");
        q->ctes.push_back(std::move(cte));
      } while (AcceptPunct(","));
    }
    q->cores.push_back(ParseCore());
    for (;;) {
      std::string op;
      if (AcceptWord("UNION")) op = AcceptWord("ALL") ? "UNION ALL" : "UNION";
      else if (AcceptWord("INTERSECT")) op = "INTERSECT";
      else if (AcceptWord("EXCEPT")) op = "EXCEPT";
      else break;
      q->compound_operators.push_back(op);
      q->cores.push_back(ParseCore());
    }
    if (AcceptWord("ORDER")) {
      ExpectWord("BY");
      q->order_by = ParseOrderTerms();
    }
    if (AcceptWord("LIMIT")) {
      q->limit = ParseExpr();
      if (AcceptWord("OFFSET")) {
        q->offset = ParseExpr();
      } else if (AcceptPunct(",")) {
        // LIMIT offset, count
        q->offset = std::move(q->limit);
        q->limit = ParseExpr();
      }
    }
    return q;
  }

  std::vector<OrderTerm> ParseOrderTerms() {
    std::vector<OrderTerm> terms;
    do {
      OrderTerm t;
      t.expr = ParseExpr();
      if (AcceptWord("DESC")) t.descending = true;
      else AcceptWord("ASC");
      if (AcceptWord("NULLS")) {
        if (!AcceptWord("FIRST")) ExpectWord("LAST");
      }
      terms.push_back(std::move(t));
    } while (AcceptPunct(","));
    return terms;
  }

  SelectCore ParseCore() {
    SelectCore core;
    if (Peek().IsPunct("(") && StartsQuery(1)) {
      Advance();
      core.nested = ParseQuery();
      ExpectPunct(")");
      return core;
    }
    if (AcceptWord("VALUES")) {
      do {
        ExpectPunct("(");
        std::vector<ExprPtr> row;
        do row.push_back(ParseExpr());
        while (AcceptPunct(","));
        ExpectPunct(")");
        core.values.push_back(std::move(row));
      } while (AcceptPunct(","));
      return core;
    }
    ExpectWord("SELECT");
    if (AcceptWord("DISTINCT")) core.distinct = true;
    else AcceptWord("ALL");
    do core.items.push_back(ParseSelectItem());
    while (AcceptPunct(","));
    if (AcceptWord("FROM")) core.from = ParseFrom();
    if (AcceptWord("WHERE")) core.where = ParseExpr();
    if (AcceptWord("GROUP")) {
      ExpectWord("BY");
      do core.group_by.push_back(ParseExpr());
      while (AcceptPunct(","));
    }
    if (AcceptWord("HAVING")) core.having = ParseExpr();
    if (AcceptWord("WINDOW")) {
      do {
        TakeName();
        ExpectWord("AS");
        ExpectPunct("(");
        ParseWindowBody(core.window_terms);
      } while (AcceptPunct(","));
    }
    return core;
  }

  SelectItem ParseSelectItem() {
    SelectItem item;
    if (AcceptPunct("*")) {
      item.star = true;
      return item;
    }
    // t.* and s.t.*
    if (IsName(Peek()) && Peek(1).IsPunct(".")) {
      size_t save = pos_;
      std::vector<std::string> parts{Advance().value};
      while (AcceptPunct(".")) {
        if (AcceptPunct("*")) {
          item.star = true;
          item.star_qualifier = std::move(parts);
          return item;
        }
        if (!IsName(Peek())) break;
        parts.push_back(Advance().value);
      }
      pos_ = save;
    }
    item.expr = ParseExpr();
    item.alias = ParseOptionalAlias();
    return item;
  }

  std::string ParseOptionalAlias() {
    if (AcceptWord("AS")) {
      const auto& t = Peek();
      if (IsName(t) || t.kind == TokenKind::kString) return Advance().value;
      Fail("expected alias after AS");
    }
    const auto& t = Peek();
    if ((t.kind == TokenKind::kWord && !IsKeywordLike(t.text)) || t.kind == TokenKind::kQuotedIdent ||
        t.kind == TokenKind::kDoubleQuoted || t.kind == TokenKind::kString)
      return Advance().value;
    return {};
  }

  std::unique_ptr<TableRef> ParseFrom() {
    auto left = ParseTableOrSubquery();
    for (;;) {
      size_t off = Peek().offset;
      std::string op;
      bool natural = false;
      if (AcceptPunct(",")) {
        op = ",";
      } else {
        natural = AcceptWord("NATURAL");
        if (AcceptWord("LEFT")) op = "LEFT";
        else if (AcceptWord("RIGHT")) op = "RIGHT";
        else if (AcceptWord("FULL")) op = "FULL";
        else if (AcceptWord("INNER")) op = "INNER";
        else if (AcceptWord("CROSS")) op = "CROSS";
        if (!op.empty() && op != "INNER" && op != "CROSS") AcceptWord("OUTER");
        if (!AcceptWord("JOIN")) {
          if (natural || !op.empty()) Fail("expected JOIN");
          break;
        }
        op = op.empty() ? "JOIN" : op + " JOIN";
      }
      auto join = std::make_unique<TableRef>(TableRef::Kind::kJoin, off);
      join->join_operator = op;
      join->natural = natural;
      join->left = std::move(left);
      join->right = ParseTableOrSubquery();
      if (AcceptWord("ON")) {
        join->on = ParseExpr();
      } else if (AcceptWord("USING")) {
        ExpectPunct("(");
        do join->using_columns.push_back(TakeName());
        while (AcceptPunct(","));
        ExpectPunct(")");
      }
      left = std::move(join);
    }
    return left;
  }

  std::unique_ptr<TableRef> ParseTableOrSubquery() {
    size_t off = Peek().offset;
    if (AcceptPunct("(")) {
      if (StartsQuery()) {
        auto ref = std::make_unique<TableRef>(TableRef::Kind::kSubquery, off);
        ref->subquery = ParseQuery();
        ExpectPunct(")");
        ref->alias = ParseOptionalAlias();
        return ref;
      }
      auto inner = ParseFrom();
      ExpectPunct(")");
      auto alias = ParseOptionalAlias();
      if (!alias.empty() && inner->kind != TableRef::Kind::kJoin) inner->alias = alias;
      return inner;
    }
    if (!IsName(Peek())) Fail("expected table name but found '" + Describe(Peek()) + "'");
    std::vector<std::string> name{Advance().value};
    while (AcceptPunct(".")) name.push_back(TakeName());
    if (Peek().IsPunct("(")) {
      auto ref = std::make_unique<TableRef>(TableRef::Kind::kFunction, off);
      ref->name = std::move(name);
      Advance();
      if (!Peek().IsPunct(")")) {
        do ref->function_args.push_back(ParseExpr());
        while (AcceptPunct(","));
      }
      ExpectPunct(")");
      ref->alias = ParseOptionalAlias();
      return ref;
    }
    auto ref = std::make_unique<TableRef>(TableRef::Kind::kTable, off);
    ref->name = std::move(name);
    ref->alias = ParseOptionalAlias();
    if (AcceptWord("INDEXED")) {
      ExpectWord("BY");
      TakeName();
    } else if (Peek().IsWord("NOT") && Peek(1).IsWord("INDEXED")) {
      Advance();
      Advance();
    }
    return ref;
  }

  // --- expressions ---------------------------------------------------------

  ExprPtr MakeBinary(std::string op, ExprPtr l, ExprPtr r, size_t off) {
    auto e = std::make_unique<Expr>(ExprKind::kBinary, off);
    e->op = std::move(op);
    e->args.push_back(std::move(l));
    e->args.push_back(std::move(r));
    return e;
  }

  ExprPtr ParseExpr() { return ParseOr(); }

  ExprPtr ParseOr() {
    auto l = ParseAnd();
    while (Peek().IsWord("OR")) {
      size_t off = Advance().offset;
      l = MakeBinary("OR", std::move(l), ParseAnd(), off);
    }
    return l;
  }

  ExprPtr ParseAnd() {
    auto l = ParseNot();
    while (Peek().IsWord("AND")) {
      size_t off = Advance().offset;
      l = MakeBinary("AND", std::move(l), ParseNot(), off);
    }
    return l;
  }

  ExprPtr ParseNot() {
    if (Peek().IsWord("NOT") && !Peek(1).IsWord("EXISTS")) {
      size_t off = Advance().offset;
      auto e = std::make_unique<Expr>(ExprKind::kUnary, off);
      e->op = "NOT";
      e->args.push_back(ParseNot());
      return e;
    }
    return ParseComparison();
  }

  ExprPtr ParseComparison() {
    auto l = ParseRelational();
    for (;;) {
      const auto& t = Peek();
      size_t off = t.offset;
      if (t.IsPunct("=") || t.IsPunct("==") || t.IsPunct("!=") || t.IsPunct("<>")) {
        std::string op = Advance().text;
        l = MakeBinary(op, std::move(l), ParseRelational(), off);
        continue;
      }
      if (t.IsWord("IS")) {
        Advance();
        bool neg = AcceptWord("NOT");
        if (AcceptWord("NULL")) {
          auto e = std::make_unique<Expr>(ExprKind::kIsNull, off);
          e->negated = neg;
          e->args.push_back(std::move(l));
          l = std::move(e);
        } else {
          if (AcceptWord("DISTINCT")) ExpectWord("FROM");
          l = MakeBinary(neg ? "IS NOT" : "IS", std::move(l), ParseRelational(), off);
        }
        continue;
      }
      if (t.IsWord("ISNULL") || t.IsWord("NOTNULL")) {
        auto e = std::make_unique<Expr>(ExprKind::kIsNull, off);
        e->negated = Advance().IsWord("NOTNULL");
        e->args.push_back(std::move(l));
        l = std::move(e);
        continue;
      }
      bool neg = false;
      size_t save = pos_;
      if (t.IsWord("NOT")) {
        Advance();
        neg = true;
        if (AcceptWord("NULL")) {
          auto e = std::make_unique<Expr>(ExprKind::kIsNull, off);
          e->negated = true;
          e->args.push_back(std::move(l));
          l = std::move(e);
          continue;
        }
      }
      if (AcceptWord("IN")) {
        auto e = std::make_unique<Expr>(ExprKind::kIn, off);
        e->negated = neg;
        e->args.push_back(std::move(l));
        if (AcceptPunct("(")) {
          if (StartsQuery()) {
            e->subquery = ParseQuery();
          } else if (!Peek().IsPunct(")")) {
            do e->args.push_back(ParseExpr());
            while (AcceptPunct(","));
          }
          ExpectPunct(")");
        } else {
          // IN table-name
          auto ref = std::make_unique<Expr>(ExprKind::kLiteral, Peek().offset);
          ref->op = TakeName();
          e->args.push_back(std::move(ref));
        }
        l = std::move(e);
        continue;
      }
      if (Peek().IsWord("LIKE") || Peek().IsWord("GLOB") || Peek().IsWord("REGEXP") || Peek().IsWord("MATCH")) {
        auto e = std::make_unique<Expr>(ExprKind::kLike, off);
        e->op = ToUpper(Advance().text);
        e->negated = neg;
        e->args.push_back(std::move(l));
        e->args.push_back(ParseRelational());
        if (AcceptWord("ESCAPE")) e->args.push_back(ParseRelational());
        l = std::move(e);
        continue;
      }
      if (AcceptWord("BETWEEN")) {
        auto e = std::make_unique<Expr>(ExprKind::kBetween, off);
        e->negated = neg;
        e->args.push_back(std::move(l));
        e->args.push_back(ParseRelational());
        ExpectWord("AND");
        e->args.push_back(ParseRelational());
        l = std::move(e);
        continue;
      }
      pos_ = save;
      break;
    }
    return l;
  }

  ExprPtr ParseRelational() {
    auto l = ParseBitwise();
    while (Peek().IsPunct("<") || Peek().IsPunct("<=") || Peek().IsPunct(">") || Peek().IsPunct(">=")) {
      const auto& t = Advance();
      l = MakeBinary(t.text, std::move(l), ParseBitwise(), t.offset);
    }
    return l;
  }

  ExprPtr ParseBitwise() {
    auto l = ParseAdditive();
    while (Peek().IsPunct("&") || Peek().IsPunct("|") || Peek().IsPunct("<<") || Peek().IsPunct(">>")) {
      const auto& t = Advance();
      l = MakeBinary(t.text, std::move(l), ParseAdditive(), t.offset);
    }
    return l;
  }

  ExprPtr ParseAdditive() {
    auto l = ParseMultiplicative();
    while (Peek().IsPunct("+") || Peek().IsPunct("-")) {
      const auto& t = Advance();
      l = MakeBinary(t.text, std::move(l), ParseMultiplicative(), t.offset);
    }
    return l;
  }

  ExprPtr ParseMultiplicative() {
    auto l = ParseConcat();
    while (Peek().IsPunct("*") || Peek().IsPunct("/") || Peek().IsPunct("%")) {
      const auto& t = Advance();
      l = MakeBinary(t.text, std::move(l), ParseConcat(), t.offset);
    }
    return l;
  }

  ExprPtr ParseConcat() {
    auto l = ParseUnary();
    while (Peek().IsPunct("||") || Peek().IsPunct("->") || Peek().IsPunct("->>")) {
      const auto& t = Advance();
      l = MakeBinary(t.text, std::move(l), ParseUnary(), t.offset);
    }
    return l;
  }

  ExprPtr ParseUnary() {
    const auto& t = Peek();
    if (t.IsPunct("-") || t.IsPunct("+") || t.IsPunct("~")) {
      auto e = std::make_unique<Expr>(ExprKind::kUnary, t.offset);
      e->op = Advance().text;
      e->args.push_back(ParseUnary());
      return e;
    }
    auto e = ParsePrimary();
    while (AcceptWord("COLLATE")) TakeName();
    return e;
  }

  ExprPtr ParsePrimary() {
    const Token& t = Peek();
    size_t off = t.offset;
    switch (t.kind) {
      case TokenKind::kNumber:
      case TokenKind::kString: {
        auto e = std::make_unique<Expr>(ExprKind::kLiteral, off);
        e->op = Advance().text;
        return e;
      }
      case TokenKind::kParameter: {
        auto e = std::make_unique<Expr>(ExprKind::kParameter, off);
        e->op = Advance().text;
        return e;
      }
      case TokenKind::kEnd:
        Fail("unexpected end of input in expression");
      default:
        break;
    }
    if (t.IsPunct("(")) {
      Advance();
      if (StartsQuery()) {
        auto e = std::make_unique<Expr>(ExprKind::kSubquery, off);
        e->subquery = ParseQuery();
        ExpectPunct(")");
        return e;
      }
      auto first = ParseExpr();
      if (AcceptPunct(")")) return first;
      auto list = std::make_unique<Expr>(ExprKind::kList, off);
      list->args.push_back(std::move(first));
      while (AcceptPunct(",")) list->args.push_back(ParseExpr());
      ExpectPunct(")");
      return list;
    }
    if (t.IsWord("NULL") || t.IsWord("TRUE") || t.IsWord("FALSE") || t.IsWord("CURRENT_DATE") ||
        t.IsWord("CURRENT_TIME") || t.IsWord("CURRENT_TIMESTAMP")) {
      auto e = std::make_unique<Expr>(ExprKind::kLiteral, off);
      e->op = ToUpper(Advance().text);
      return e;
    }
    if (t.IsWord("CASE")) return ParseCase();
    if (t.IsWord("CAST")) {
      Advance();
      ExpectPunct("(");
      auto e = std::make_unique<Expr>(ExprKind::kCast, off);
      e->args.push_back(ParseExpr());
      ExpectWord("AS");
      e->op = ParseTypeName();
      ExpectPunct(")");
      return e;
    }
    if (t.IsWord("EXISTS") || (t.IsWord("NOT") && Peek(1).IsWord("EXISTS"))) {
      auto e = std::make_unique<Expr>(ExprKind::kExists, off);
      e->negated = AcceptWord("NOT");
      ExpectWord("EXISTS");
      ExpectPunct("(");
      e->subquery = ParseQuery();
      ExpectPunct(")");
      return e;
    }
    // Function call. Some reserved words double as scalar functions.
    bool callable_keyword = t.kind == TokenKind::kWord && (t.IsWord("LEFT") || t.IsWord("RIGHT") || t.IsWord("LIKE") ||
                                                          t.IsWord("GLOB") || t.IsWord("MATCH"));
    if ((IsName(t) || callable_keyword) && t.kind != TokenKind::kDoubleQuoted && Peek(1).IsPunct("(")) {
      return ParseFunction();
    }
    if (IsName(t)) {
      auto e = std::make_unique<Expr>(ExprKind::kColumn, off);
      e->double_quoted = t.kind == TokenKind::kDoubleQuoted;
      e->names.push_back(Advance().value);
      while (Peek().IsPunct(".") && IsName(Peek(1))) {
        Advance();
        e->names.push_back(Advance().value);
      }
      if (e->names.size() > 1) e->double_quoted = false;
      return e;
    }
    Fail("unexpected '" + Describe(t) + "' in expression");
  }

  std::string ParseTypeName() {
    std::string name;
    while (IsName(Peek())) {
      if (!name.empty()) name += ' ';
      name += Advance().text;
    }
    if (name.empty()) Fail("expected type name");
    if (AcceptPunct("(")) {
      name += '(';
      do {
        if (AcceptPunct("-")) name += '-';
        if (Peek().kind != TokenKind::kNumber) Fail("expected number in type");
        name += Advance().text;
      } while (AcceptPunct(",") && (name += ',', true));
      ExpectPunct(")");
      name += ')';
    }
    return name;
  }

  ExprPtr ParseCase() {
    auto e = std::make_unique<Expr>(ExprKind::kCase, Advance().offset);
    if (!Peek().IsWord("WHEN")) {
      e->op = "OPERAND";
      e->args.push_back(ParseExpr());
    }
    bool any = false;
    while (AcceptWord("WHEN")) {
      any = true;
      e->args.push_back(ParseExpr());
      ExpectWord("THEN");
      e->args.push_back(ParseExpr());
    }
    if (!any) Fail("CASE without WHEN");
    if (AcceptWord("ELSE")) {
      e->distinct = true;  // marks a trailing ELSE arm
      e->args.push_back(ParseExpr());
    }
    ExpectWord("END");
    return e;
  }

  ExprPtr ParseFunction() {
    auto e = std::make_unique<Expr>(ExprKind::kFunction, Peek().offset);
    e->op = Advance().value;
    ExpectPunct("(");
    if (AcceptPunct("*")) {
      e->star_argument = true;
    } else if (!Peek().IsPunct(")")) {
      if (AcceptWord("DISTINCT")) e->distinct = true;
      else AcceptWord("ALL");
      do e->args.push_back(ParseExpr());
      while (AcceptPunct(","));
      if (AcceptWord("ORDER")) {
        ExpectWord("BY");
        for (auto& term : ParseOrderTerms()) e->window_args.push_back(std::move(term.expr));
      }
    }
    ExpectPunct(")");
    if (AcceptWord("FILTER")) {
      ExpectPunct("(");
      ExpectWord("WHERE");
      e->window_args.push_back(ParseExpr());
      ExpectPunct(")");
    }
    if (AcceptWord("OVER")) {
      if (AcceptPunct("(")) ParseWindowBody(e->window_args);
      else TakeName();
    }
    return e;
  }

  /// Parses a window specification body after its opening parenthesis, through the close.
  void ParseWindowBody(std::vector<ExprPtr>& sink) {
    if (IsName(Peek()) && !Peek().IsWord("PARTITION") && !Peek().IsWord("ORDER") && !Peek().IsWord("ROWS") &&
        !Peek().IsWord("RANGE") && !Peek().IsWord("GROUPS"))
      Advance();  // base window name
    if (AcceptWord("PARTITION")) {
      ExpectWord("BY");
      do sink.push_back(ParseExpr());
      while (AcceptPunct(","));
    }
    if (AcceptWord("ORDER")) {
      ExpectWord("BY");
      for (auto& term : ParseOrderTerms()) sink.push_back(std::move(term.expr));
    }
    // Frame clauses carry no schema references beyond literals; skip to the close.
    int depth = 0;
    while (!(depth == 0 && Peek().IsPunct(")"))) {
      if (Peek().kind == TokenKind::kEnd) Fail("unterminated window specification");
      if (Peek().IsPunct("(")) ++depth;
      if (Peek().IsPunct(")")) --depth;
      Advance();
    }
    ExpectPunct(")");
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

}  // namespace

std::unique_ptr<Query> Parse(std::string_view sql) { return Parser(sql).ParseStatement(); }

bool HasTopLevelOrderBy(std::string_view sql) {
  try {
    return !Parse(sql)->order_by.empty();
  } catch (const ParseError&) {
    // Token fallback: ORDER BY at parenthesis depth zero.
    auto tokens = Tokenize(sql);
    int depth = 0;
    for (size_t i = 0; i + 1 < tokens.size(); ++i) {
      if (tokens[i].IsPunct("(")) ++depth;
      else if (tokens[i].IsPunct(")")) --depth;
      else if (depth == 0 && tokens[i].IsWord("ORDER") && tokens[i + 1].IsWord("BY")) return true;
    }
    return false;
  }
}

}  // namespace unjoin::sql

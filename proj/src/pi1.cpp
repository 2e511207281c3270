#include <cctype>
#include <set>
#include <stdexcept>

#include "pgl/scott.hpp"

namespace pgl {

struct Pi1Formula::Node {
  enum class Kind { atom_eq, atom_ne, conj, disj, neg } kind;
  std::map<std::string, std::int64_t> form;  // lhs - rhs; key "" unused
  std::vector<std::shared_ptr<Node>> kids;
};

namespace {

std::string normalize(const std::string& text) {
  std::string s = text;
  auto replace = [&](const std::string& a, const std::string& b) {
    for (std::size_t i; (i = s.find(a)) != std::string::npos;) s.replace(i, a.size(), b);
  };
  replace("≠", "!=");
  replace("·", "*");
  replace("∀", "forall ");
  return s;
}

class Parser {
 public:
  Parser(std::string text, std::uint32_t p) : s_(normalize(text)), p_(p) {}

  Pi1Formula parse() {
    Pi1Formula f;
    expect_word("forall");
    do f.variables.push_back(ident());
    while (accept(","));
    expect(":");
    f.matrix = disjunction();
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return f;
  }

 private:
  using NodePtr = std::shared_ptr<Pi1Formula::Node>;
  using Kind = Pi1Formula::Node::Kind;

  [[noreturn]] void fail(const std::string& what) {
    throw std::invalid_argument("pi1 formula: " + what + " at offset " + std::to_string(i_));
  }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(const std::string& tok) {
    skip();
    if (s_.compare(i_, tok.size(), tok) == 0) {
      i_ += tok.size();
      return true;
    }
    return false;
  }
  void expect(const std::string& tok) {
    if (!accept(tok)) fail("expected '" + tok + "'");
  }
  bool peek_word(const std::string& w) {
    skip();
    if (s_.compare(i_, w.size(), w) != 0) return false;
    const auto j = i_ + w.size();
    return j >= s_.size() || !(std::isalnum(static_cast<unsigned char>(s_[j])) || s_[j] == '_');
  }
  bool accept_word(const std::string& w) {
    if (!peek_word(w)) return false;
    i_ += w.size();
    return true;
  }
  void expect_word(const std::string& w) {
    if (!accept_word(w)) fail("expected '" + w + "'");
  }
  std::string ident() {
    skip();
    const auto start = i_;
    while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_')) ++i_;
    if (start == i_ || std::isdigit(static_cast<unsigned char>(s_[start]))) fail("expected identifier");
    return s_.substr(start, i_ - start);
  }
  std::int64_t integer() {
    skip();
    const auto start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (start == i_) fail("expected integer");
    return std::stoll(s_.substr(start, i_ - start));
  }

  NodePtr disjunction() {
    auto n = conjunction();
    while (accept_word("or")) n = std::make_shared<Pi1Formula::Node>(Pi1Formula::Node{Kind::disj, {}, {n, conjunction()}});
    return n;
  }
  NodePtr conjunction() {
    auto n = unary();
    while (accept_word("and")) n = std::make_shared<Pi1Formula::Node>(Pi1Formula::Node{Kind::conj, {}, {n, unary()}});
    return n;
  }
  NodePtr unary() {
    if (accept_word("not")) return std::make_shared<Pi1Formula::Node>(Pi1Formula::Node{Kind::neg, {}, {unary()}});
    if (accept("(")) {
      auto n = disjunction();
      expect(")");
      return n;
    }
    auto lhs = term();
    Kind k;
    if (accept("!="))
      k = Kind::atom_ne;
    else if (accept("="))
      k = Kind::atom_eq;
    else
      fail("expected '=' or '!='");
    for (const auto& [name, c] : term()) lhs[name] -= c;
    return std::make_shared<Pi1Formula::Node>(Pi1Formula::Node{k, std::move(lhs), {}});
  }
  std::map<std::string, std::int64_t> term() {
    std::map<std::string, std::int64_t> out;
    std::int64_t sign = accept("-") ? -1 : 1;
    while (true) {
      std::int64_t coeff = 1;
      std::string name;
      do {
        skip();
        if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
          coeff *= integer();
        } else if (peek_word("p") || (s_.compare(i_, 2, "p^") == 0)) {
          ++i_;
          std::int64_t e = accept("^") ? integer() : 1;
          for (std::int64_t k = 0; k < e; ++k) coeff *= p_;
        } else {
          if (!name.empty()) fail("nonlinear term");
          name = ident();
        }
      } while (accept("*"));
      if (name.empty() && coeff != 0) fail("the only constant is 0");
      if (!name.empty()) out[name] += sign * coeff;
      if (accept("+"))
        sign = 1;
      else if (accept("-"))
        sign = -1;
      else
        break;
    }
    return out;
  }

  std::string s_;
  std::uint32_t p_;
  std::size_t i_ = 0;
};

struct Evaluator {
  const FiniteGroup& group;
  std::map<std::string, std::uint64_t> env;

  std::uint64_t value(const std::map<std::string, std::int64_t>& form) const {
    std::uint64_t acc = 0;
    for (const auto& [name, c] : form) {
      auto it = env.find(name);
      if (it == env.end()) throw std::invalid_argument("pi1 formula: unbound name '" + name + "'");
      if (c == 0) continue;
      auto x = group.scale(static_cast<std::uint64_t>(c < 0 ? -c : c), it->second);
      if (c < 0) x = group.negate(x);
      acc = group.add(acc, x);
    }
    return acc;
  }

  bool eval(const Pi1Formula::Node& n) const {
    using Kind = Pi1Formula::Node::Kind;
    switch (n.kind) {
      case Kind::atom_eq:
        return value(n.form) == 0;
      case Kind::atom_ne:
        return value(n.form) != 0;
      case Kind::conj:
        return eval(*n.kids[0]) && eval(*n.kids[1]);
      case Kind::disj:
        return eval(*n.kids[0]) || eval(*n.kids[1]);
      default:
        return !eval(*n.kids[0]);
    }
  }
};

// Truth of the universal sentence with variables ranging over `domain`.
bool holds_over(const FiniteGroup& group, const Pi1Formula& theta, const std::map<std::string, std::uint64_t>& params,
                const std::vector<std::uint64_t>& domain) {
  Evaluator ev{group, params};
  const auto k = theta.variables.size();
  std::vector<std::size_t> pick(k, 0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) ev.env[theta.variables[i]] = domain[pick[i]];
    if (!ev.eval(*theta.matrix)) return false;
    std::size_t i = 0;
    for (; i < k; ++i) {
      if (++pick[i] < domain.size()) break;
      pick[i] = 0;
    }
    if (i == k) return true;
  }
}

std::vector<std::uint64_t> closure(const FiniteGroup& group, std::vector<std::uint64_t> gens) {
  std::set<std::uint64_t> seen{0};
  std::vector<std::uint64_t> frontier{0};
  while (!frontier.empty()) {
    std::vector<std::uint64_t> next;
    for (auto x : frontier)
      for (auto g : gens) {
        const auto y = group.add(x, g);
        if (seen.insert(y).second) next.push_back(y);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

}  // namespace

Pi1Formula Pi1Formula::parse(const std::string& text, std::uint32_t p) { return Parser(text, p).parse(); }

Pi1Result pi1_check(const FiniteGroupSpec& spec, const Pi1Formula& theta,
                    const std::map<std::string, Element>& params, std::uint64_t subgroup_limit) {
  const FiniteGroup group(spec);
  std::map<std::string, std::uint64_t> env;
  std::vector<std::uint64_t> gens;
  for (const auto& [name, e] : params) {
    env[name] = group.index_of(e);
    gens.push_back(env[name]);
  }
  std::vector<std::uint64_t> all(group.order());
  for (std::uint64_t x = 0; x < group.order(); ++x) all[x] = x;

  Pi1Result r;
  r.full_group = holds_over(group, theta, env, all);

  // Every subgroup containing the parameters, grown one generator at a time.
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<std::vector<std::uint64_t>> todo{closure(group, gens)};
  seen.insert(todo.front());
  bool all_hold = true, complete = true;
  while (!todo.empty()) {
    auto sub = std::move(todo.back());
    todo.pop_back();
    ++r.subgroups_checked;
    all_hold = all_hold && holds_over(group, theta, env, sub);
    std::set<std::uint64_t> members(sub.begin(), sub.end());
    for (std::uint64_t x = 0; x < group.order(); ++x) {
      if (members.count(x)) continue;
      auto bigger = closure(group, {x});
      std::vector<std::uint64_t> merged;
      {
        std::set<std::uint64_t> m;
        for (auto a : sub)
          for (auto b : bigger) m.insert(group.add(a, b));
        merged.assign(m.begin(), m.end());
      }
      if (seen.insert(merged).second) {
        if (seen.size() > subgroup_limit) {
          complete = false;
          break;
        }
        todo.push_back(std::move(merged));
      }
    }
    if (!complete) break;
  }
  if (complete) {
    r.all_subgroups = all_hold;
    if (all_hold != r.full_group) throw std::logic_error("universal sentence not downward persistent");
  }
  return r;
}

bool pi1_holds_in_all_finite_subgroups(const FiniteGroupSpec& spec, const Pi1Formula& theta,
                                       const std::map<std::string, Element>& params) {
  return pi1_check(spec, theta, params).full_group;
}

}  // namespace pgl

#include "obk/mcg.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>

namespace obk {

TwistWord TwistWord::normalized() const {
  TwistWord out;
  for (const auto& [name, exp] : factors) {
    if (exp == 0) continue;
    if (!out.factors.empty() && out.factors.back().first == name) {
      out.factors.back().second += exp;
      if (out.factors.back().second == 0) out.factors.pop_back();
    } else {
      out.factors.emplace_back(name, exp);
    }
  }
  return out;
}

TwistWord TwistWord::inverse() const {
  TwistWord out;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it)
    out.factors.emplace_back(it->first, -it->second);
  return out;
}

TwistWord TwistWord::operator*(const TwistWord& o) const {
  TwistWord out = *this;
  out.factors.insert(out.factors.end(), o.factors.begin(), o.factors.end());
  return out.normalized();
}

bool TwistWord::all_positive() const {
  for (const auto& [name, exp] : factors)
    if (exp < 0) return false;
  return true;
}

std::vector<std::pair<std::string, int>> TwistWord::letters() const {
  std::vector<std::pair<std::string, int>> ls;
  for (const auto& [name, exp] : factors) {
    int sign = exp < 0 ? -1 : 1;
    for (Int i = 0; i < (exp < 0 ? -exp : exp); ++i) ls.emplace_back(name, sign);
  }
  return ls;
}

TwistWord TwistWord::from_letters(const std::vector<std::pair<std::string, int>>& ls) {
  TwistWord w;
  for (const auto& [name, sign] : ls) w.factors.emplace_back(name, sign);
  return w.normalized();
}

std::string twistword_to_string(const TwistWord& w) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [name, exp] : w.factors) {
    if (!first) os << ' ';
    first = false;
    os << "T[" << name << "]";
    if (exp != 1) os << '^' << exp;
  }
  return os.str();
}

TwistWord parse_twistword(const std::string& text) {
  TwistWord w;
  std::istringstream is(text);
  std::string token;
  while (is >> token) {
    if (token.size() < 4 || token[0] != 'T' || token[1] != '[')
      throw std::invalid_argument("bad twist factor '" + token + "', expected T[name] or T[name]^k");
    auto close = token.find(']');
    if (close == std::string::npos) throw std::invalid_argument("unterminated curve name in '" + token + "'");
    std::string name = token.substr(2, close - 2);
    Int exp = 1;
    if (close + 1 < token.size()) {
      if (token[close + 1] != '^') throw std::invalid_argument("expected '^' in '" + token + "'");
      try {
        exp = std::stoll(token.substr(close + 2));
      } catch (const std::exception&) {
        throw std::invalid_argument("bad exponent in '" + token + "'");
      }
    }
    w.factors.emplace_back(name, exp);
  }
  return w.normalized();
}

HomologyAction transvection_along(const Surface& s, const IntVec& c) {
  const int n = s.rank();
  IntMat m = IntMat::Identity(n, n);
  IntVec row = s.intersection_matrix().transpose() * c;  // row_j = <c, e_j>
  for (int j = 0; j < n; ++j) m.col(j) += row[j] * c;
  return {std::move(m)};
}

HomologyAction twist_transvection(const Surface& s, const std::string& curve_name) {
  return transvection_along(s, s.curve(curve_name).homology);
}

HomologyAction homology_action(const Surface& s, const TwistWord& w) {
  const int n = s.rank();
  IntMat m = IntMat::Identity(n, n);
  for (const auto& [name, exp] : w.normalized().factors) {
    const IntVec& c = s.curve(name).homology;
    // Transvection powers have the closed form x -> x + e<c,x>c.
    IntMat t = IntMat::Identity(n, n);
    IntVec row = s.intersection_matrix().transpose() * c;
    for (int j = 0; j < n; ++j) t.col(j) += exp * row[j] * c;
    m = m * t;
  }
  return {std::move(m)};
}

namespace {

const GeneratorMap& twist_map(const Surface& s, const std::string& name, bool inverse) {
  const Curve& c = s.curve(name);
  if (!c.pi1_automorphism)
    throw std::runtime_error("no declared automorphism for curve '" + name + "'");
  if (!inverse) return *c.pi1_automorphism;
  if (!c.pi1_automorphism_inverse)
    throw std::runtime_error("no declared automorphism (inverse) for curve '" + name + "'");
  return *c.pi1_automorphism_inverse;
}

Word apply_word(const Surface& s, const TwistWord& w, Word value) {
  const auto& factors = w.normalized().factors;
  for (auto it = factors.rbegin(); it != factors.rend(); ++it) {
    const auto& [name, exp] = *it;
    const GeneratorMap& f = twist_map(s, name, exp < 0);
    for (Int i = 0; i < (exp < 0 ? -exp : exp); ++i) value = f.apply(value);
  }
  return value;
}

}  // namespace

Word pi1_apply(const Surface& s, const TwistWord& w, int generator_index) {
  if (generator_index < 0 || generator_index >= s.rank())
    throw std::out_of_range("generator index out of range");
  return apply_word(s, w, Word::generator(generator_index));
}

RelationReport verify_relation_instance(const Surface& s, const RelationInstance& inst) {
  RelationReport rep;
  TwistWord lhs{inst.lhs}, rhs{inst.rhs};
  bool have_pi1 = true;
  for (const auto& side : {lhs.normalized(), rhs.normalized()}) {
    for (const auto& [name, exp] : side.factors) {
      const Curve& c = s.curve(name);
      if (!c.pi1_automorphism || (exp < 0 && !c.pi1_automorphism_inverse)) have_pi1 = false;
    }
  }
  if (have_pi1) {
    rep.level = RelationLevel::pi1_exact;
    rep.pass = true;
    for (int i = 0; i < s.rank(); ++i) {
      Word a = pi1_apply(s, lhs, i), b = pi1_apply(s, rhs, i);
      if (a != b) {
        rep.pass = false;
        rep.notes.push_back("sides disagree on generator " + s.generator_names()[static_cast<std::size_t>(i)]);
      }
    }
  } else {
    rep.level = RelationLevel::homology_only;
    rep.pass = homology_action(s, lhs).matrix == homology_action(s, rhs).matrix;
    rep.notes.push_back(
        "homology-only check: equal homology actions are necessary but not sufficient "
        "for equality in the mapping class group");
  }
  return rep;
}

TwistWord rewrite_with_relation(const Surface& s, const TwistWord& w, const RelationInstance& inst,
                                std::size_t position, bool use_lhs) {
  (void)s;
  auto ls = w.normalized().letters();
  auto from = TwistWord{use_lhs ? inst.lhs : inst.rhs}.normalized().letters();
  auto to = TwistWord{use_lhs ? inst.rhs : inst.lhs}.normalized().letters();
  if (from.empty()) throw std::invalid_argument("relation side is empty");
  if (position + from.size() > ls.size() ||
      !std::equal(from.begin(), from.end(), ls.begin() + static_cast<std::ptrdiff_t>(position)))
    throw std::invalid_argument("relation '" + inst.name + "': no occurrence at position " +
                                std::to_string(position));
  std::vector<std::pair<std::string, int>> out(ls.begin(), ls.begin() + static_cast<std::ptrdiff_t>(position));
  out.insert(out.end(), to.begin(), to.end());
  out.insert(out.end(), ls.begin() + static_cast<std::ptrdiff_t>(position + from.size()), ls.end());
  return TwistWord::from_letters(out);
}

namespace {

std::string word_key(const TwistWord& w) {
  std::ostringstream os;
  for (const auto& [name, exp] : w.factors) os << name << '\x01' << exp << '\x02';
  return os.str();
}

}  // namespace

std::optional<PositiveWordCert> positivity_search(const Surface& s, const TwistWord& start,
                                                  const std::vector<RelationInstance>& registry,
                                                  int depth) {
  if (depth < 0) throw std::invalid_argument("negative search depth");
  struct Node {
    TwistWord word;
    std::vector<RewriteStep> chain;
  };
  TwistWord w0 = start.normalized();
  if (w0.all_positive()) return PositiveWordCert{w0, {}, w0};

  std::deque<Node> queue{{w0, {}}};
  std::set<std::string> seen{word_key(w0)};

  // Instances in registry order, ties broken by name for reproducibility.
  std::vector<const RelationInstance*> insts;
  for (const auto& r : registry) insts.push_back(&r);
  std::stable_sort(insts.begin(), insts.end(),
                   [](const RelationInstance* a, const RelationInstance* b) { return a->name < b->name; });

  while (!queue.empty()) {
    Node node = std::move(queue.front());
    queue.pop_front();
    if (static_cast<int>(node.chain.size()) >= depth) continue;
    auto ls = node.word.letters();
    for (std::size_t pos = 0; pos < ls.size(); ++pos) {
      for (const RelationInstance* inst : insts) {
        for (bool use_lhs : {true, false}) {
          TwistWord next;
          try {
            next = rewrite_with_relation(s, node.word, *inst, pos, use_lhs);
          } catch (const std::invalid_argument&) {
            continue;
          }
          if (!seen.insert(word_key(next)).second) continue;
          auto chain = node.chain;
          chain.push_back({inst->name, use_lhs, pos});
          if (next.all_positive()) return PositiveWordCert{w0, std::move(chain), next};
          queue.push_back({std::move(next), std::move(chain)});
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<PantsMatch> pants_pattern_scan(const Surface& s, const TwistWord& w) {
  std::map<std::string, Int> net;
  for (const auto& [name, exp] : w.normalized().factors) net[name] += exp;
  std::vector<PantsMatch> out;
  for (const Curve& z : s.curves()) {
    if (z.kind.boundary_parallel || !z.pants) continue;
    auto itz = net.find(z.name);
    if (itz == net.end() || itz->second != -1) continue;
    auto itx = net.find(z.pants->x);
    auto ity = net.find(z.pants->y);
    if (itx == net.end() || ity == net.end() || itx->second != 1 || ity->second != 1) continue;
    if (!s.curve(z.pants->x).kind.boundary_parallel || !s.curve(z.pants->y).kind.boundary_parallel)
      continue;
    out.push_back({z.pants->x, z.pants->y, z.name});
  }
  return out;
}

}  // namespace obk

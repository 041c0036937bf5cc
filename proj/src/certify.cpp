#include "obk/certify.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace obk {

std::string to_string(Classification c) {
  switch (c) {
    case Classification::unknown: return "unknown";
    case Classification::overtwisted: return "overtwisted";
    case Classification::tight: return "tight";
    case Classification::virtually_overtwisted: return "virtually_overtwisted";
    case Classification::universally_tight: return "universally_tight";
  }
  return "unknown";
}

namespace {

constexpr const char* kCiteR1 =
    "products of positive Dehn twists support tight structures (Giroux; Eliashberg-Gromov)";
constexpr const char* kCiteR2 =
    "a transverse overtwisted disk violates the Bennequin-Eliashberg inequality";
constexpr const char* kCiteR3 = "tight with an overtwisted finite cover is virtually overtwisted";
constexpr const char* kCiteR4 =
    "overtwisted-complexity trichotomy: zero iff tight; one iff overtwisted and not right-veering; "
    "at least two iff overtwisted and right-veering";
constexpr const char* kCiteR5 = "a base covered by an open book of complexity one is overtwisted";
constexpr const char* kCiteR6 = "the depth of the binding equals the overtwisted complexity";
constexpr const char* kCiteR7 = "the binding has depth one iff the monodromy is not right-veering";
constexpr const char* kCiteR8 = "right-veering transfers both ways along open book covering maps";
constexpr const char* kCiteR9 =
    "tight structures are supported only by right-veering open books (Honda-Kazez-Matic)";
constexpr const char* kCiteR10 =
    "right-veering and overtwisted: the binding depth exceeds one and is at most the depth of a "
    "Legendrian approximation";

struct NodeState {
  bool tight = false, overtwisted = false;
  bool rv_yes = false, rv_no = false;
  bool universally_tight = false, virtually_overtwisted = false;
  Int n_lo = 0;
  std::optional<Int> n_hi;
};

struct Engine {
  std::map<std::string, NodeState> nodes;
  std::vector<CoverLink> links;
  std::vector<DerivationStep> derivation;
  std::vector<std::string> conflicts;
  bool changed = false;

  NodeState& node(const std::string& id) { return nodes[id]; }

  void conflict(const std::string& node_id, const std::string& what) {
    std::string msg = node_id + ": " + what;
    if (std::find(conflicts.begin(), conflicts.end(), msg) == conflicts.end())
      conflicts.push_back(msg);
  }

  void record(const char* rule, const char* citation, const std::string& node_id,
              const std::string& detail) {
    derivation.push_back({rule, citation, node_id, detail});
    changed = true;
  }

  void set_tight(const std::string& id, const char* rule, const char* cite, const std::string& why) {
    NodeState& s = node(id);
    if (s.overtwisted) conflict(id, "derived tight but already overtwisted");
    if (!s.tight) {
      s.tight = true;
      record(rule, cite, id, why);
    }
  }

  void set_overtwisted(const std::string& id, const char* rule, const char* cite, const std::string& why) {
    NodeState& s = node(id);
    if (s.tight) conflict(id, "derived overtwisted but already tight");
    if (!s.overtwisted) {
      s.overtwisted = true;
      record(rule, cite, id, why);
    }
  }

  void set_rv(const std::string& id, bool yes, const char* rule, const char* cite, const std::string& why) {
    NodeState& s = node(id);
    bool& flag = yes ? s.rv_yes : s.rv_no;
    bool other = yes ? s.rv_no : s.rv_yes;
    if (other) conflict(id, "right-veering derived both true and false");
    if (!flag) {
      flag = true;
      record(rule, cite, id, why);
    }
  }

  void raise_n_lo(const std::string& id, Int lo, const char* rule, const char* cite, const std::string& why) {
    NodeState& s = node(id);
    if (lo > s.n_lo) {
      s.n_lo = lo;
      record(rule, cite, id, why);
      if (s.n_hi && *s.n_hi < s.n_lo) conflict(id, "empty complexity interval");
    }
  }

  void lower_n_hi(const std::string& id, Int hi, const char* rule, const char* cite, const std::string& why) {
    NodeState& s = node(id);
    if (!s.n_hi || hi < *s.n_hi) {
      s.n_hi = hi;
      record(rule, cite, id, why);
      if (*s.n_hi < s.n_lo) conflict(id, "empty complexity interval");
    }
  }

  void saturate() {
    do {
      changed = false;
      for (auto& [id, s] : nodes) {
        if (s.universally_tight && s.virtually_overtwisted)
          conflict(id, "universally tight and virtually overtwisted simultaneously");
        if (s.tight) {
          set_rv(id, true, "R9", kCiteR9, "tight forces right-veering monodromy");
          lower_n_hi(id, 0, "R4", kCiteR4, "tight: complexity is zero");
        }
        if (s.overtwisted) raise_n_lo(id, 1, "R4", kCiteR4, "overtwisted: complexity is positive");
        if (s.n_hi && *s.n_hi == 0) set_tight(id, "R4", kCiteR4, "complexity zero forces tightness");
        if (s.n_lo >= 1)
          set_overtwisted(id, "R4", kCiteR4, "positive complexity forces an overtwisted structure");
        if (s.overtwisted && s.rv_no)
          lower_n_hi(id, 1, "R4", kCiteR4, "overtwisted and not right-veering: complexity one");
        if (s.overtwisted && s.rv_yes)
          raise_n_lo(id, 2, "R4", kCiteR4, "overtwisted and right-veering: complexity at least two");
        if (s.n_lo >= 1 && s.n_hi && *s.n_hi <= 1)
          set_rv(id, false, "R4", kCiteR4, "complexity one: the monodromy is not right-veering");
        if (s.n_lo >= 2)
          set_rv(id, true, "R4", kCiteR4, "complexity at least two: the monodromy is right-veering");
      }
      for (const auto& link : links) {
        NodeState& b = node(link.base);
        NodeState& c = node(link.cover);
        if (b.rv_yes) set_rv(link.cover, true, "R8", kCiteR8, "right-veering lifts to the cover " + link.cover);
        if (c.rv_yes) set_rv(link.base, true, "R8", kCiteR8, "right-veering descends from the cover " + link.cover);
        if (b.rv_no) set_rv(link.cover, false, "R8", kCiteR8, "non-right-veering lifts to the cover " + link.cover);
        if (c.rv_no) set_rv(link.base, false, "R8", kCiteR8, "non-right-veering descends from the cover " + link.cover);
        if (b.tight && c.overtwisted && !b.virtually_overtwisted) {
          b.virtually_overtwisted = true;
          record("R3", kCiteR3, link.base, "tight base with overtwisted cover " + link.cover);
        }
        if (c.n_lo >= 1 && c.n_hi && *c.n_hi <= 1)
          set_overtwisted(link.base, "R5", kCiteR5,
                          "cover " + link.cover + " has complexity one");
      }
    } while (changed && conflicts.empty());
  }
};

Engine run_engine(std::vector<Certificate> certificates, std::vector<CoverLink> cover_links,
                  const std::vector<std::string>& extra_nodes) {
  // Canonical certificate order keeps derivations reproducible regardless of
  // the order certificates arrive in.
  std::sort(certificates.begin(), certificates.end(), [](const Certificate& a, const Certificate& b) {
    auto key = [](const Certificate& c) {
      return std::tuple<int, std::string, Int, std::string, std::string>(
          static_cast<int>(c.kind), c.attached_to, c.e_minus, c.statement, c.cover_id);
    };
    return key(a) < key(b);
  });
  std::sort(cover_links.begin(), cover_links.end(), [](const CoverLink& a, const CoverLink& b) {
    return std::tie(a.base, a.cover) < std::tie(b.base, b.cover);
  });

  Engine eng;
  eng.links = cover_links;
  for (const auto& id : extra_nodes) eng.node(id);
  for (const auto& link : cover_links) {
    eng.node(link.base);
    eng.node(link.cover);
  }

  for (const Certificate& cert : certificates) {
    switch (cert.kind) {
      case Certificate::Kind::positive_word:
        eng.set_tight(cert.attached_to, "R1", kCiteR1, "verified positive twist word");
        break;
      case Certificate::Kind::ot_disk_movie:
        eng.set_overtwisted(cert.attached_to, "R2", kCiteR2, "verified transverse overtwisted disk movie");
        eng.lower_n_hi(cert.attached_to, cert.e_minus, "R2", kCiteR2,
                       "disk movie with " + std::to_string(cert.e_minus) + " negative elliptic points");
        break;
      case Certificate::Kind::external_axiom: {
        std::string cite = cert.citation.empty() ? "external axiom" : cert.citation;
        if (cert.statement == "universally_tight") {
          NodeState& s = eng.node(cert.attached_to);
          if (!s.universally_tight) {
            s.universally_tight = true;
            eng.record("R11", "externally certified universal tightness", cert.attached_to,
                       "axiom (" + cite + ")");
          }
          eng.set_tight(cert.attached_to, "R11", "universal tightness implies tightness", "axiom (" + cite + ")");
        } else if (cert.statement == "tight") {
          eng.set_tight(cert.attached_to, "R11", "externally certified tightness", "axiom (" + cite + ")");
        } else if (cert.statement == "overtwisted") {
          eng.set_overtwisted(cert.attached_to, "R11", "externally certified overtwistedness",
                              "axiom (" + cite + ")");
        } else {
          eng.conflict(cert.attached_to, "unknown external axiom statement '" + cert.statement + "'");
        }
        break;
      }
      case Certificate::Kind::cover_relation:
        eng.links.push_back({cert.attached_to, cert.cover_id});
        eng.node(cert.attached_to);
        eng.node(cert.cover_id);
        break;
    }
  }
  std::sort(eng.links.begin(), eng.links.end(), [](const CoverLink& a, const CoverLink& b) {
    return std::tie(a.base, a.cover) < std::tie(b.base, b.cover);
  });
  eng.links.erase(std::unique(eng.links.begin(), eng.links.end(),
                              [](const CoverLink& a, const CoverLink& b) {
                                return a.base == b.base && a.cover == b.cover;
                              }),
                  eng.links.end());

  eng.saturate();
  return eng;
}

NodeVerdict verdict_of(const NodeState& s, const std::string& id, std::vector<DerivationStep>* steps) {
  NodeVerdict v;
  if (s.universally_tight) v.classification = Classification::universally_tight;
  else if (s.virtually_overtwisted) v.classification = Classification::virtually_overtwisted;
  else if (s.tight) v.classification = Classification::tight;
  else if (s.overtwisted) v.classification = Classification::overtwisted;
  else v.classification = Classification::unknown;

  v.n_bounds = Interval{s.n_lo, s.n_hi};
  if (s.overtwisted) {
    v.depth_B = v.n_bounds;
    if (steps)
      steps->push_back({"R6", kCiteR6, id, "binding depth interval copied from the complexity interval"});
    if (s.rv_no && steps)
      steps->push_back({"R7", kCiteR7, id, "depth one matches the non-right-veering monodromy"});
    if (s.rv_yes) {
      v.depth_L_note = "d(L) >= d(B) for any Legendrian approximation L of the binding";
      if (steps) steps->push_back({"R10", kCiteR10, id, "right-veering and overtwisted"});
    }
  }
  return v;
}

}  // namespace

std::variant<Verdict, InconsistencyReport> classify(const std::string& openbook,
                                                    std::vector<Certificate> certificates,
                                                    std::vector<CoverLink> cover_links) {
  Engine eng = run_engine(std::move(certificates), std::move(cover_links), {openbook});
  if (!eng.conflicts.empty()) return InconsistencyReport{eng.conflicts};

  Verdict v;
  v.openbook = openbook;
  v.derivation = eng.derivation;
  v.main = verdict_of(eng.node(openbook), openbook, &v.derivation);
  for (const auto& [id, state] : eng.nodes) {
    if (id == openbook) continue;
    v.related[id] = verdict_of(state, id, &v.derivation);
  }
  return v;
}

DepthReport depth_bounds(const Verdict& verdict) {
  DepthReport r;
  r.depth_B = verdict.main.depth_B;
  if (verdict.main.depth_L_note) r.note = *verdict.main.depth_L_note;
  else if (!verdict.main.depth_B) r.note = "binding depth is defined for overtwisted structures only";
  return r;
}

InconsistencyReport check_consistency(const std::vector<Certificate>& certificates,
                                      const std::vector<CoverLink>& cover_links) {
  Engine eng = run_engine(certificates, cover_links, {});
  return InconsistencyReport{eng.conflicts};
}

}  // namespace obk

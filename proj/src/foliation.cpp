#include "obk/foliation.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <variant>

namespace obk {

namespace {

struct ArcEnds {
  std::multiset<std::string> elliptic;
  std::multiset<std::string> braid;
};

const AArc* find_a(const PageConfig& p, const std::string& id) {
  for (const auto& a : p.a_arcs)
    if (a.id == id) return &a;
  return nullptr;
}

const BArc* find_b(const PageConfig& p, const std::string& id) {
  for (const auto& b : p.b_arcs)
    if (b.id == id) return &b;
  return nullptr;
}

void accumulate_ends(const PageConfig& p, const std::string& id, ArcEnds& ends, bool& found) {
  if (const AArc* a = find_a(p, id)) {
    ends.elliptic.insert(a->elliptic);
    ends.braid.insert(a->braid_endpoint);
    found = true;
  } else if (const BArc* b = find_b(p, id)) {
    ends.elliptic.insert(b->positive_end);
    ends.elliptic.insert(b->negative_end);
    found = true;
  }
}

std::map<std::string, int> elliptic_signs(const PageConfig& p) {
  std::map<std::string, int> signs;
  for (const auto& e : p.elliptics) signs[e.id] = e.sign;
  return signs;
}

// Arc configuration of a page as comparable data.
std::map<std::string, std::string> page_signature(const PageConfig& p) {
  std::map<std::string, std::string> sig;
  for (const auto& a : p.a_arcs) sig[a.id] = "a:" + a.elliptic + ":" + a.braid_endpoint;
  for (const auto& b : p.b_arcs) sig[b.id] = "b:" + b.positive_end + ":" + b.negative_end;
  return sig;
}

}  // namespace

MovieDiagnostics validate_movie(const MoviePresentation& movie) {
  MovieDiagnostics d;
  auto fail = [&](const std::string& msg) { d.failures.push_back(msg); };

  if (movie.pages.empty()) {
    fail("movie has no pages");
    return d;
  }
  if (movie.pages.front().t != 0.0) fail("first page must sit at t = 0");
  if (movie.pages.back().t != 1.0) fail("last page must sit at t = 1");
  for (std::size_t i = 0; i + 1 < movie.pages.size(); ++i)
    if (!(movie.pages[i].t < movie.pages[i + 1].t)) fail("page times must increase strictly");

  // The elliptic point set is global: ids, signs and binding assignments are
  // constant through the movie.
  const auto& first = movie.pages.front();
  std::set<std::string> binding(movie.surface.binding.begin(), movie.surface.binding.end());
  for (const auto& e : first.elliptics) {
    if (e.sign != 1 && e.sign != -1) fail("elliptic " + e.id + ": sign must be +1 or -1");
    if (!binding.empty() && !binding.count(e.binding))
      fail("elliptic " + e.id + ": unknown binding component '" + e.binding + "'");
  }
  for (std::size_t i = 1; i < movie.pages.size(); ++i) {
    auto a = first.elliptics, b = movie.pages[i].elliptics;
    auto lt = [](const EllipticPoint& x, const EllipticPoint& y) { return x.id < y.id; };
    std::sort(a.begin(), a.end(), lt);
    std::sort(b.begin(), b.end(), lt);
    if (a != b) fail("page " + std::to_string(i) + ": elliptic points differ from page 0");
  }

  std::set<std::string> braid_ids;
  for (const auto& a : first.a_arcs) braid_ids.insert(a.braid_endpoint);
  for (std::size_t pi = 0; pi < movie.pages.size(); ++pi) {
    const PageConfig& p = movie.pages[pi];
    auto signs = elliptic_signs(p);
    std::map<std::string, int> degree;
    std::set<std::string> arc_ids;
    std::set<std::string> page_braid;
    auto page_tag = "page " + std::to_string(pi);
    for (const auto& a : p.a_arcs) {
      if (!arc_ids.insert(a.id).second) fail(page_tag + ": duplicate arc id " + a.id);
      if (!signs.count(a.elliptic))
        fail(page_tag + ": a-arc " + a.id + " has a dangling elliptic endpoint");
      else
        degree[a.elliptic] += 1;
      if (!page_braid.insert(a.braid_endpoint).second)
        fail(page_tag + ": braid endpoint " + a.braid_endpoint + " used twice");
    }
    for (const auto& b : p.b_arcs) {
      if (!arc_ids.insert(b.id).second) fail(page_tag + ": duplicate arc id " + b.id);
      if (!signs.count(b.positive_end) || !signs.count(b.negative_end)) {
        fail(page_tag + ": b-arc " + b.id + " has a dangling endpoint");
        continue;
      }
      if (signs[b.positive_end] != 1)
        fail(page_tag + ": b-arc " + b.id + " starts at a non-positive elliptic point");
      if (signs[b.negative_end] != -1)
        fail(page_tag + ": b-arc " + b.id + " ends at a non-negative elliptic point");
      degree[b.positive_end] += 1;
      degree[b.negative_end] += 1;
    }
    for (const auto& e : p.elliptics)
      if (degree[e.id] != 1)
        fail(page_tag + ": elliptic " + e.id + " is the endpoint of " +
             std::to_string(degree[e.id]) + " arcs (expected exactly 1)");
    if (page_braid != braid_ids) fail(page_tag + ": braid endpoints differ from page 0");
  }

  // Events: at most one per gap, strictly inside it; pages change by exactly
  // the listed saddle.
  std::vector<const HyperbolicEvent*> gap_event(movie.pages.size() - 1, nullptr);
  for (const auto& ev : movie.events) {
    if (ev.sign != 1 && ev.sign != -1) fail("event at t = " + std::to_string(ev.t) + ": bad sign");
    int gap = -1;
    for (std::size_t i = 0; i + 1 < movie.pages.size(); ++i)
      if (movie.pages[i].t < ev.t && ev.t < movie.pages[i + 1].t) gap = static_cast<int>(i);
    if (gap < 0) {
      fail("event at t = " + std::to_string(ev.t) + " does not fall strictly between pages");
      continue;
    }
    if (gap_event[static_cast<std::size_t>(gap)])
      fail("two events between pages " + std::to_string(gap) + " and " + std::to_string(gap + 1));
    gap_event[static_cast<std::size_t>(gap)] = &ev;
  }
  for (std::size_t i = 0; i + 1 < movie.pages.size(); ++i) {
    const PageConfig& before = movie.pages[i];
    const PageConfig& after = movie.pages[i + 1];
    auto gap_tag = "between pages " + std::to_string(i) + " and " + std::to_string(i + 1);
    const HyperbolicEvent* ev = gap_event[i];
    auto sig_before = page_signature(before);
    auto sig_after = page_signature(after);
    if (!ev) {
      if (sig_before != sig_after) fail(gap_tag + ": configuration changes without an event");
      continue;
    }
    ArcEnds merged_ends, produced_ends;
    for (const auto& id : ev->merged) {
      bool found = false;
      accumulate_ends(before, id, merged_ends, found);
      if (!found) fail(gap_tag + ": merged arc " + id + " is not in the earlier page");
      sig_before.erase(id);
    }
    for (const auto& id : ev->produced) {
      bool found = false;
      accumulate_ends(after, id, produced_ends, found);
      if (!found) fail(gap_tag + ": produced arc " + id + " is not in the later page");
      sig_after.erase(id);
    }
    if (sig_before != sig_after) fail(gap_tag + ": arcs outside the saddle change");
    if (merged_ends.elliptic != produced_ends.elliptic || merged_ends.braid != produced_ends.braid)
      fail(gap_tag + ": saddle does not conserve arc endpoints");
    std::multiset<std::string> incident(ev->incident_elliptics.begin(), ev->incident_elliptics.end());
    if (!ev->incident_elliptics.empty() && incident != merged_ends.elliptic)
      fail(gap_tag + ": incident_elliptics differ from the endpoints of the merged arcs");
  }

  // Closure: a bijection from the last page to the first preserving signs,
  // binding assignments, arc kinds and endpoint structure.
  {
    const PageConfig& last = movie.pages.back();
    auto first_signs = elliptic_signs(first);
    std::map<std::string, std::string> first_binding;
    for (const auto& e : first.elliptics) first_binding[e.id] = e.binding;

    std::set<std::string> image;
    for (const auto& e : last.elliptics) {
      auto it = movie.closure.elliptics.find(e.id);
      if (it == movie.closure.elliptics.end()) {
        fail("closure: elliptic " + e.id + " has no image");
        continue;
      }
      if (!first_signs.count(it->second)) {
        fail("closure: elliptic image " + it->second + " unknown");
      } else {
        if (first_signs[it->second] != e.sign) fail("closure: elliptic " + e.id + " changes sign");
        if (first_binding[it->second] != e.binding)
          fail("closure: elliptic " + e.id + " changes binding component");
      }
      if (!image.insert(it->second).second) fail("closure: elliptic map is not injective");
    }

    std::set<std::string> braid_image;
    for (const auto& [from, to] : movie.closure.braid_endpoints) {
      if (!braid_ids.count(from) || !braid_ids.count(to))
        fail("closure: unknown braid endpoint in " + from + " -> " + to);
      if (!braid_image.insert(to).second) fail("closure: braid endpoint map is not injective");
    }

    std::set<std::string> arc_image;
    auto mapped = [&](const std::map<std::string, std::string>& m, const std::string& k,
                      bool& ok) -> std::string {
      auto it = m.find(k);
      if (it == m.end()) {
        ok = false;
        return {};
      }
      return it->second;
    };
    for (const auto& a : last.a_arcs) {
      auto it = movie.closure.arcs.find(a.id);
      if (it == movie.closure.arcs.end()) {
        fail("closure: arc " + a.id + " has no image");
        continue;
      }
      const AArc* target = find_a(first, it->second);
      if (!target) {
        fail("closure: a-arc " + a.id + " must map to an a-arc");
        continue;
      }
      bool ok = true;
      std::string ell = mapped(movie.closure.elliptics, a.elliptic, ok);
      std::string braid = mapped(movie.closure.braid_endpoints, a.braid_endpoint, ok);
      if (!ok || target->elliptic != ell || target->braid_endpoint != braid)
        fail("closure: a-arc " + a.id + " endpoints do not match its image");
      if (!arc_image.insert(it->second).second) fail("closure: arc map is not injective");
    }
    for (const auto& b : last.b_arcs) {
      auto it = movie.closure.arcs.find(b.id);
      if (it == movie.closure.arcs.end()) {
        fail("closure: arc " + b.id + " has no image");
        continue;
      }
      const BArc* target = find_b(first, it->second);
      if (!target) {
        fail("closure: b-arc " + b.id + " must map to a b-arc");
        continue;
      }
      bool ok = true;
      std::string pos = mapped(movie.closure.elliptics, b.positive_end, ok);
      std::string neg = mapped(movie.closure.elliptics, b.negative_end, ok);
      if (!ok || target->positive_end != pos || target->negative_end != neg)
        fail("closure: b-arc " + b.id + " endpoints do not match its image");
      if (!arc_image.insert(it->second).second) fail("closure: arc map is not injective");
    }
    if (arc_image.size() != first.a_arcs.size() + first.b_arcs.size())
      fail("closure: arc map is not a bijection onto the first page");
  }

  return d;
}

SingularityCensus singularity_census(const MoviePresentation& movie) {
  auto d = validate_movie(movie);
  if (!d.ok()) throw std::invalid_argument("invalid movie: " + d.failures.front());
  SingularityCensus c;
  for (const auto& e : movie.pages.front().elliptics) (e.sign > 0 ? c.e_plus : c.e_minus) += 1;
  for (const auto& ev : movie.events) (ev.sign > 0 ? c.h_plus : c.h_minus) += 1;
  return c;
}

Int euler_characteristic(const SingularityCensus& c) {
  return (c.e_plus + c.e_minus) - (c.h_plus + c.h_minus);
}

Int self_linking(const SingularityCensus& c) {
  return -(c.e_plus - c.e_minus) + (c.h_plus - c.h_minus);
}

namespace {

GirouxGraph build_giroux(const MoviePresentation& movie, int sign) {
  GirouxGraph g;
  std::map<std::string, int> signs = elliptic_signs(movie.pages.front());
  for (const auto& e : movie.pages.front().elliptics)
    if (e.sign == sign) g.vertices.push_back(e.id);

  for (const auto& ev : movie.events) {
    if (ev.sign != sign) continue;
    if (ev.incident_elliptics.empty())
      throw std::invalid_argument("event at t = " + std::to_string(ev.t) +
                                  " carries no incidence data");
    std::vector<std::string> same;
    for (const auto& id : ev.incident_elliptics)
      if (signs.count(id) && signs[id] == sign) same.push_back(id);
    if (same.size() == 2)
      g.edges.push_back({same[0], same[1]});
    else
      g.degenerate_events.push_back("event at t = " + std::to_string(ev.t));
  }

  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& v : g.vertices) adj[v];
  std::map<std::string, int> degree;
  for (const auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
    degree[u] += 1;
    degree[v] += 1;
  }
  std::set<std::string> seen;
  if (!g.vertices.empty()) {
    std::vector<std::string> stack{g.vertices.front()};
    seen.insert(g.vertices.front());
    while (!stack.empty()) {
      auto v = stack.back();
      stack.pop_back();
      for (const auto& w : adj[v])
        if (seen.insert(w).second) stack.push_back(w);
    }
  }
  g.connected = seen.size() == g.vertices.size();
  g.tree = g.connected && g.edges.size() + 1 == g.vertices.size();
  bool all_degree_two = !g.vertices.empty();
  for (const auto& v : g.vertices)
    if (degree[v] != 2) all_degree_two = false;
  g.single_cycle = g.connected && all_degree_two && g.edges.size() == g.vertices.size();
  if (g.vertices.empty()) {
    g.connected = true;
    g.tree = true;
    g.single_cycle = false;
  }
  return g;
}

}  // namespace

GirouxGraphs giroux_graphs(const MoviePresentation& movie) {
  auto d = validate_movie(movie);
  if (!d.ok()) throw std::invalid_argument("invalid movie: " + d.failures.front());
  GirouxGraphs out;
  out.positive = build_giroux(movie, 1);
  out.negative = build_giroux(movie, -1);
  return out;
}

std::variant<OTDiskMovieCert, OTDiskRejection> recognize_ot_disk(const MoviePresentation& movie) {
  OTDiskRejection rej;
  auto d = validate_movie(movie);
  if (!d.ok()) {
    rej.failed_conditions.push_back("movie invalid: " + d.failures.front());
    return rej;
  }
  SingularityCensus c = singularity_census(movie);
  if (euler_characteristic(c) != 1)
    rej.failed_conditions.push_back("Euler characteristic " +
                                    std::to_string(euler_characteristic(c)) + " != 1 (not a disk)");
  if (self_linking(c) != 1)
    rej.failed_conditions.push_back("self-linking " + std::to_string(self_linking(c)) + " != +1");
  GirouxGraphs g = giroux_graphs(movie);
  if (!g.negative.degenerate_events.empty())
    rej.failed_conditions.push_back("negative saddle without two negative elliptic endpoints");
  if (!g.negative.tree) rej.failed_conditions.push_back("negative Giroux graph is not a tree");
  if (!g.positive.degenerate_events.empty())
    rej.failed_conditions.push_back("positive saddle without two positive elliptic endpoints");
  if (!g.positive.single_cycle)
    rej.failed_conditions.push_back("positive Giroux graph is not a single cycle");
  if (!rej.failed_conditions.empty()) return rej;
  return OTDiskMovieCert{c.e_minus, "necessary-conditions", c};
}

}  // namespace obk

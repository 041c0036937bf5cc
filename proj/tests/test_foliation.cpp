#include "doctest.h"

#include "obk/foliation.hpp"
#include "obk/presets.hpp"

#include <variant>

using namespace obk;

namespace {

MoviePresentation trivial_disk_movie() {
  MoviePresentation m;
  m.surface.genus = 0;
  m.surface.boundary_count = 1;
  m.surface.binding = {"bd1"};
  auto page = [&](double t) {
    PageConfig p;
    p.t = t;
    p.elliptics = {{"P1", 1, "bd1"}};
    p.a_arcs = {{"A1", "P1", "S1"}};
    return p;
  };
  m.pages.push_back(page(0.0));
  m.pages.push_back(page(1.0));
  m.closure.elliptics = {{"P1", "P1"}};
  m.closure.braid_endpoints = {{"S1", "S1"}};
  m.closure.arcs = {{"A1", "A1"}};
  return m;
}

// Cyclic rotation of the movie by one page: the movie restarts at page 1 and
// the first saddle is replayed at the end of the period through the closure
// identification. Arcs produced by the replayed saddle get fresh ids.
MoviePresentation rotate_once(const MoviePresentation& m) {
  REQUIRE(m.pages.size() >= 2);
  std::map<std::string, std::string> closure_inv_arcs, closure_inv_ell, closure_inv_braid;
  for (const auto& [k, v] : m.closure.arcs) closure_inv_arcs[v] = k;
  for (const auto& [k, v] : m.closure.elliptics) closure_inv_ell[v] = k;
  for (const auto& [k, v] : m.closure.braid_endpoints) closure_inv_braid[v] = k;
  auto back_ell = [&](const std::string& id) {
    auto it = closure_inv_ell.find(id);
    return it == closure_inv_ell.end() ? id : it->second;
  };
  auto back_braid = [&](const std::string& id) {
    auto it = closure_inv_braid.find(id);
    return it == closure_inv_braid.end() ? id : it->second;
  };

  // Which arcs the first gap's event produces (if any).
  const HyperbolicEvent* first_event = nullptr;
  for (const auto& ev : m.events)
    if (m.pages[0].t < ev.t && ev.t < m.pages[1].t) first_event = &ev;

  MoviePresentation out;
  out.surface = m.surface;
  for (std::size_t i = 1; i < m.pages.size(); ++i) out.pages.push_back(m.pages[i]);

  // The reattached copy of page 1, one period later: arcs persisting from
  // page 0 keep their last-page names via the closure; freshly produced arcs
  // get primed ids with endpoints pulled back through the closure.
  PageConfig tail = m.pages[1];
  std::map<std::string, std::string> fresh;  // page-1 id -> new id on the tail
  if (first_event)
    for (const auto& id : first_event->produced) fresh[id] = id + "+";
  auto tail_arc_id = [&](const std::string& id) {
    auto it = fresh.find(id);
    if (it != fresh.end()) return it->second;
    auto inv = closure_inv_arcs.find(id);
    REQUIRE(inv != closure_inv_arcs.end());
    return inv->second;
  };
  for (auto& a : tail.a_arcs) {
    bool produced = fresh.count(a.id) > 0;
    a.id = tail_arc_id(a.id);
    if (produced) {
      a.elliptic = back_ell(a.elliptic);
      a.braid_endpoint = back_braid(a.braid_endpoint);
    } else {
      for (const auto& pa : m.pages.back().a_arcs)
        if (pa.id == a.id) a = pa;
    }
  }
  for (auto& b : tail.b_arcs) {
    bool produced = fresh.count(b.id) > 0;
    b.id = tail_arc_id(b.id);
    if (produced) {
      b.positive_end = back_ell(b.positive_end);
      b.negative_end = back_ell(b.negative_end);
    } else {
      for (const auto& pb : m.pages.back().b_arcs)
        if (pb.id == b.id) b = pb;
    }
  }
  out.pages.push_back(std::move(tail));

  // Retime pages uniformly and move the events with their gaps.
  const std::size_t page_count = out.pages.size();
  for (std::size_t i = 0; i < page_count; ++i)
    out.pages[i].t = static_cast<double>(i) / static_cast<double>(page_count - 1);
  for (const auto& ev : m.events) {
    int gap = -1;
    for (std::size_t i = 0; i + 1 < m.pages.size(); ++i)
      if (m.pages[i].t < ev.t && ev.t < m.pages[i + 1].t) gap = static_cast<int>(i);
    REQUIRE(gap >= 0);
    HyperbolicEvent copy = ev;
    int new_gap = gap == 0 ? static_cast<int>(page_count) - 2 : gap - 1;
    copy.t = (static_cast<double>(new_gap) + 0.5) / static_cast<double>(page_count - 1);
    if (gap == 0) {
      for (auto& id : copy.merged) id = closure_inv_arcs.at(id);
      for (auto& id : copy.produced) id = fresh.at(id);
      for (auto& id : copy.incident_elliptics) id = back_ell(id);
    }
    out.events.push_back(std::move(copy));
  }

  // New closure: persisted arcs map to their page-1 selves, fresh arcs to the
  // originals they copy; elliptic and braid identifications are inherited.
  out.closure.elliptics = m.closure.elliptics;
  out.closure.braid_endpoints = m.closure.braid_endpoints;
  for (const auto& a : out.pages.back().a_arcs) {
    std::string orig;
    for (const auto& [p1_id, fresh_id] : fresh)
      if (fresh_id == a.id) orig = p1_id;
    out.closure.arcs[a.id] = orig.empty() ? m.closure.arcs.at(a.id) : orig;
  }
  for (const auto& b : out.pages.back().b_arcs) {
    std::string orig;
    for (const auto& [p1_id, fresh_id] : fresh)
      if (fresh_id == b.id) orig = p1_id;
    out.closure.arcs[b.id] = orig.empty() ? m.closure.arcs.at(b.id) : orig;
  }
  return out;
}

}  // namespace

TEST_CASE("bundled case-1 movie validates and has the expected counts") {
  MoviePresentation m = presets::case_movie(1, 4, 4);
  auto d = validate_movie(m);
  for (const auto& f : d.failures) CAPTURE(f);
  CHECK(d.ok());
  CHECK(m.pages.front().elliptics.size() == 6);
  CHECK(m.events.size() == 5);

  SingularityCensus c = singularity_census(m);
  CHECK(c.e_plus == 4);
  CHECK(c.e_minus == 2);
  CHECK(c.h_plus == 4);
  CHECK(c.h_minus == 1);
  CHECK(euler_characteristic(c) == 1);
  CHECK(self_linking(c) == 1);
}

TEST_CASE("bundled case-2 movie passes identically") {
  MoviePresentation m = presets::case_movie(2, 3, 3);
  CHECK(validate_movie(m).ok());
  SingularityCensus c = singularity_census(m);
  CHECK(c.e_plus == 4);
  CHECK(c.e_minus == 2);
  CHECK(c.h_plus == 4);
  CHECK(c.h_minus == 1);
  CHECK(euler_characteristic(c) == 1);
  CHECK(self_linking(c) == 1);
  auto rec = recognize_ot_disk(m);
  REQUIRE(std::holds_alternative<OTDiskMovieCert>(rec));
  CHECK(std::get<OTDiskMovieCert>(rec).e_minus == 2);
}

TEST_CASE("giroux graphs of the case-1 movie") {
  MoviePresentation m = presets::case_movie(1, 4, 4);
  GirouxGraphs g = giroux_graphs(m);
  CHECK(g.negative.vertices.size() == 2);
  CHECK(g.negative.edges.size() == 1);
  CHECK(g.negative.tree);
  CHECK(g.positive.vertices.size() == 4);
  CHECK(g.positive.edges.size() == 4);
  CHECK(g.positive.single_cycle);
}

TEST_CASE("case-1 movie is recognized as a transverse overtwisted disk") {
  MoviePresentation m = presets::case_movie(1, 4, 4);
  auto rec = recognize_ot_disk(m);
  REQUIRE(std::holds_alternative<OTDiskMovieCert>(rec));
  auto cert = std::get<OTDiskMovieCert>(rec);
  CHECK(cert.e_minus == 2);
  CHECK(cert.level == "necessary-conditions");
}

TEST_CASE("trivial disk movie: census (1,0,0,0), sl = -1, rejected") {
  MoviePresentation m = trivial_disk_movie();
  CHECK(validate_movie(m).ok());
  SingularityCensus c = singularity_census(m);
  CHECK(c.e_plus == 1);
  CHECK(c.e_minus == 0);
  CHECK(c.h_plus == 0);
  CHECK(c.h_minus == 0);
  CHECK(euler_characteristic(c) == 1);
  CHECK(self_linking(c) == -1);

  GirouxGraphs g = giroux_graphs(m);
  CHECK(g.negative.vertices.empty());
  CHECK(g.positive.vertices.size() == 1);
  CHECK(!g.positive.single_cycle);

  auto rec = recognize_ot_disk(m);
  REQUIRE(std::holds_alternative<OTDiskRejection>(rec));
  bool mentions_sl = false;
  for (const auto& f : std::get<OTDiskRejection>(rec).failed_conditions)
    if (f.find("self-linking") != std::string::npos) mentions_sl = true;
  CHECK(mentions_sl);
}

TEST_CASE("euler characteristic arithmetic") {
  CHECK(euler_characteristic({4, 2, 4, 1}) == 1);
  CHECK(euler_characteristic({1, 0, 0, 0}) == 1);
  CHECK(euler_characteristic({2, 2, 2, 2}) == 0);
  CHECK(self_linking({4, 2, 4, 1}) == 1);
  CHECK(self_linking({2, 1, 3, 1}) == 1);
}

TEST_CASE("complexity-one movie is accepted with e_- = 1") {
  MoviePresentation m = presets::complexity_one_movie();
  CHECK(validate_movie(m).ok());
  auto rec = recognize_ot_disk(m);
  REQUIRE(std::holds_alternative<OTDiskMovieCert>(rec));
  CHECK(std::get<OTDiskMovieCert>(rec).e_minus == 1);
}

TEST_CASE("single corruptions are caught") {
  SUBCASE("deleting an event breaks page locality") {
    MoviePresentation m = presets::case_movie(1, 4, 4);
    m.events.erase(m.events.begin() + 1);
    auto d = validate_movie(m);
    REQUIRE(!d.ok());
    CHECK(d.failures.front().find("changes without an event") != std::string::npos);
  }
  SUBCASE("permuting the closure map breaks the identification") {
    MoviePresentation m = presets::case_movie(1, 4, 4);
    std::swap(m.closure.arcs["A5"], m.closure.arcs["A6"]);
    CHECK(!validate_movie(m).ok());
  }
  SUBCASE("a b-arc between two positive points is invalid") {
    MoviePresentation m = presets::case_movie(1, 4, 4);
    for (auto& p : m.pages)
      for (auto& b : p.b_arcs)
        if (b.id == "B1") b.negative_end = "P1";
    CHECK(!validate_movie(m).ok());
  }
  SUBCASE("flipping any single event sign moves sl by two and is detected") {
    for (int parity = 1; parity <= 2; ++parity) {
      for (std::size_t i = 0; i < 5; ++i) {
        MoviePresentation m =
            parity == 1 ? presets::case_movie(1, 4, 4) : presets::case_movie(2, 3, 3);
        Int sl_before = self_linking(singularity_census(m));
        m.events[i].sign *= -1;
        Int sl_after = self_linking(singularity_census(m));
        Int diff = sl_after - sl_before;
        CHECK((diff == 2 || diff == -2));
        CHECK(std::holds_alternative<OTDiskRejection>(recognize_ot_disk(m)));
      }
    }
  }
  SUBCASE("truncating the movie fails closure") {
    MoviePresentation m = presets::case_movie(1, 4, 4);
    m.pages.pop_back();
    m.events.pop_back();
    m.pages.back().t = 1.0;
    CHECK(!validate_movie(m).ok());
  }
}

TEST_CASE("census is invariant under id relabeling") {
  MoviePresentation m = presets::case_movie(1, 4, 4);
  auto relabel = [](std::string s) { return "x_" + s; };
  MoviePresentation r = m;
  for (auto& p : r.pages) {
    for (auto& e : p.elliptics) e.id = relabel(e.id);
    for (auto& a : p.a_arcs) { a.id = relabel(a.id); a.elliptic = relabel(a.elliptic); }
    for (auto& b : p.b_arcs) {
      b.id = relabel(b.id);
      b.positive_end = relabel(b.positive_end);
      b.negative_end = relabel(b.negative_end);
    }
  }
  for (auto& ev : r.events) {
    for (auto& id : ev.merged) id = relabel(id);
    for (auto& id : ev.produced) id = relabel(id);
    for (auto& id : ev.incident_elliptics) id = relabel(id);
  }
  ClosureMap c;
  for (const auto& [k, v] : m.closure.elliptics) c.elliptics[relabel(k)] = relabel(v);
  for (const auto& [k, v] : m.closure.arcs) c.arcs[relabel(k)] = relabel(v);
  c.braid_endpoints = m.closure.braid_endpoints;
  r.closure = c;
  CHECK(validate_movie(r).ok());
  SingularityCensus a = singularity_census(m), b = singularity_census(r);
  CHECK(a.e_plus == b.e_plus);
  CHECK(a.e_minus == b.e_minus);
  CHECK(a.h_plus == b.h_plus);
  CHECK(a.h_minus == b.h_minus);
}

TEST_CASE("the disk movies generalize to other p and q of the right parity") {
  for (auto [parity, p, q] : {std::tuple{1, 2, 2}, {1, 2, 4}, {1, 6, 4}, {2, 3, 5}, {2, 5, 3}}) {
    CAPTURE(p);
    CAPTURE(q);
    MoviePresentation m = presets::case_movie(parity, p, q);
    CHECK(validate_movie(m).ok());
    auto rec = recognize_ot_disk(m);
    REQUIRE(std::holds_alternative<OTDiskMovieCert>(rec));
    CHECK(std::get<OTDiskMovieCert>(rec).e_minus == 2);
  }
  CHECK_THROWS_AS(presets::case_movie(1, 2, 3), std::invalid_argument);  // wrong parity
  CHECK_THROWS_AS(presets::case_movie(3, 2, 3), std::invalid_argument);  // no bundled movie
}

TEST_CASE("census is invariant under page rotation through the closure") {
  for (int parity = 1; parity <= 2; ++parity) {
    MoviePresentation m = parity == 1 ? presets::case_movie(1, 4, 4) : presets::case_movie(2, 3, 3);
    SingularityCensus before = singularity_census(m);
    MoviePresentation r = rotate_once(m);
    auto d = validate_movie(r);
    for (const auto& f : d.failures) CAPTURE(f);
    REQUIRE(d.ok());
    SingularityCensus after = singularity_census(r);
    CHECK(before.e_plus == after.e_plus);
    CHECK(before.e_minus == after.e_minus);
    CHECK(before.h_plus == after.h_plus);
    CHECK(before.h_minus == after.h_minus);
    // Rotation also preserves recognition.
    CHECK(std::holds_alternative<OTDiskMovieCert>(recognize_ot_disk(r)));
  }
}

TEST_CASE("two negative saddles between the same pair give a multi-edge, not a tree") {
  // Census (4,2): build a small movie whose two negative events join N1, N2
  // twice; G_-- then has two parallel edges.
  MoviePresentation m;
  m.surface.genus = 0;
  m.surface.boundary_count = 1;
  m.surface.binding = {"bd1"};
  auto page = [&](double t, std::vector<BArc> bs) {
    PageConfig p;
    p.t = t;
    p.elliptics = {{"P1", 1, "bd1"}, {"P2", 1, "bd1"}, {"N1", -1, "bd1"}, {"N2", -1, "bd1"}};
    p.b_arcs = std::move(bs);
    return p;
  };
  m.pages.push_back(page(0.0, {{"B1", "P1", "N1"}, {"B2", "P2", "N2"}}));
  m.pages.push_back(page(0.5, {{"B3", "P1", "N2"}, {"B4", "P2", "N1"}}));
  m.pages.push_back(page(1.0, {{"B5", "P1", "N1"}, {"B6", "P2", "N2"}}));
  m.events.push_back({0.25, -1, {"B1", "B2"}, {"B3", "B4"}, {"P1", "N1", "P2", "N2"}, std::nullopt});
  m.events.push_back({0.75, -1, {"B3", "B4"}, {"B5", "B6"}, {"P1", "N2", "P2", "N1"}, std::nullopt});
  m.closure.elliptics = {{"P1", "P1"}, {"P2", "P2"}, {"N1", "N1"}, {"N2", "N2"}};
  m.closure.arcs = {{"B5", "B1"}, {"B6", "B2"}};
  CHECK(validate_movie(m).ok());
  GirouxGraphs g = giroux_graphs(m);
  CHECK(g.negative.edges.size() == 2);
  CHECK(!g.negative.tree);
}

TEST_CASE("events without incidence data make giroux_graphs fail loudly") {
  MoviePresentation m = presets::case_movie(1, 4, 4);
  m.events[0].incident_elliptics.clear();
  CHECK(validate_movie(m).ok());  // incidence is optional for validity
  CHECK_THROWS_AS(giroux_graphs(m), std::invalid_argument);
}

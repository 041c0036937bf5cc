#pragma once

#include "obk/words.hpp"

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace obk {

/// Movie presentations of open book foliations: a braided surface described
/// page by page through a-arcs (one binding endpoint, one braid endpoint),
/// b-arcs (joining a positive and a negative elliptic point), and the saddle
/// events between consecutive pages.

struct EllipticPoint {
  std::string id;
  int sign = 1;         // +1 or -1
  std::string binding;  // binding component carrying the point
  bool operator==(const EllipticPoint&) const = default;
};

struct AArc {
  std::string id;
  std::string elliptic;
  std::string braid_endpoint;  // the point marked with a circled dot
  bool operator==(const AArc&) const = default;
};

struct BArc {
  std::string id;
  std::string positive_end;
  std::string negative_end;
  bool operator==(const BArc&) const = default;
};

struct PageConfig {
  double t = 0.0;
  std::vector<EllipticPoint> elliptics;
  std::vector<AArc> a_arcs;
  std::vector<BArc> b_arcs;
};

struct HyperbolicEvent {
  double t = 0.0;
  int sign = 1;
  std::array<std::string, 2> merged{};
  std::array<std::string, 2> produced{};
  std::vector<std::string> incident_elliptics;
  std::optional<std::string> region_tag;
};

struct ClosureMap {
  std::map<std::string, std::string> elliptics;        // last page -> first page
  std::map<std::string, std::string> arcs;
  std::map<std::string, std::string> braid_endpoints;
};

struct MovieSurfaceRef {
  int genus = 0;
  int boundary_count = 1;
  std::vector<std::string> binding;  // binding component names
};

struct MoviePresentation {
  MovieSurfaceRef surface;
  std::vector<PageConfig> pages;
  std::vector<HyperbolicEvent> events;
  ClosureMap closure;
};

struct MovieDiagnostics {
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Checks page invariants, event locality (pages change by exactly the listed
/// saddle between consecutive times) and the closure identification.
MovieDiagnostics validate_movie(const MoviePresentation& movie);

struct SingularityCensus {
  Int e_plus = 0, e_minus = 0, h_plus = 0, h_minus = 0;
};

/// Exact singularity counts by sign. Rejects invalid movies.
SingularityCensus singularity_census(const MoviePresentation& movie);

/// (e+ + e-) - (h+ + h-): the Euler characteristic of the foliated surface.
Int euler_characteristic(const SingularityCensus& census);

/// -(e+ - e-) + (h+ - h-): the self-linking number of the braided boundary.
Int self_linking(const SingularityCensus& census);

struct GirouxGraph {
  std::vector<std::string> vertices;                          // same-sign elliptics
  std::vector<std::array<std::string, 2>> edges;              // same-sign events
  std::vector<std::string> degenerate_events;                 // events without two same-sign endpoints
  bool connected = false;
  bool tree = false;
  bool single_cycle = false;
};

struct GirouxGraphs {
  GirouxGraph positive;  // G_++
  GirouxGraph negative;  // G_--
};

/// G_-- has the negative elliptic points as vertices and the negative saddle
/// events as edges; G_++ is built dually from the positive data.
GirouxGraphs giroux_graphs(const MoviePresentation& movie);

struct OTDiskMovieCert {
  Int e_minus = 0;  // upper bound for the overtwisted complexity
  std::string level = "necessary-conditions";
  SingularityCensus census;
};

struct OTDiskRejection {
  std::vector<std::string> failed_conditions;
};

/// Recognizes the combinatorial footprint of a transverse overtwisted disk:
/// disk Euler characteristic, self-linking +1, a spanning tree of negative
/// data and a single positive cycle. These conditions are necessary for a
/// transverse overtwisted disk; the certificate is labelled accordingly.
std::variant<OTDiskMovieCert, OTDiskRejection> recognize_ot_disk(const MoviePresentation& movie);

}  // namespace obk

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "occin/demand.hpp"
#include "occin/solution.hpp"

namespace occin {

enum class VarKind { Flow, Assign, Use, CompNode, Linearize };

/*
  Identifies one binary variable. All indexes are 1-based as printed:

    f_d<d>_s<k>_w<w>_e<e>    flow of demand d, segment k, on wavelength w over arc e
    a_d<d>_w<w>              wavelength of demand d (a_d<d>_s<k>_w<w> per segment)
    u_<w>                    wavelength w used
    c_q<q>_v<v>              computing node v for request q
    z_q<q>_w<w>_v<v>         a * c product (z_q<q>_s<k>_w<w>_v<v> per segment)

  Demand ids count communication demands first, then computing requests. A
  model without computing segments gives each source of a computing request
  its own demand id (two per request).
*/
struct VarKey {
  VarKind kind = VarKind::Use;
  int demand = 0;
  int segment = 0;
  int wavelength = 0;
  int arc = 0;
  int node = 0;

  std::string name() const;
  static std::optional<VarKey> parse(std::string_view name);
  friend auto operator<=>(const VarKey&, const VarKey&) = default;
};

enum class Sense { LessEqual, GreaterEqual, Equal };

struct Term {
  int coef = 1;
  int var = 0;  // index into IlpModel::variables
};

struct LinearConstraint {
  std::string name;
  std::vector<Term> terms;
  Sense sense = Sense::Equal;
  int rhs = 0;
};

/// One routed entity of the model: a lone lightpath or a computing request with three segments.
struct ModelDemand {
  int id = 0;
  DemandKind kind = DemandKind::Comm;
  int index = 0;     // position in Instance::comm / Instance::comp
  int segment = 0;   // lone lightpath: 0 for comm, 1/2 for a decomposed request
  bool compute = false;
  NodeId src, dst;
  CompDemand q{};
};

struct IlpModel {
  Mode mode = Mode::Bypass;
  Coupling coupling = Coupling::PerDemand;
  int wavelengths = 0;
  std::vector<ModelDemand> demands;
  std::vector<VarKey> variables;  // all binary
  std::vector<LinearConstraint> constraints;
  std::vector<Term> objective;    // minimised

  std::optional<int> find(const VarKey& k) const;
  int add_variable(const VarKey& k);

 private:
  std::map<VarKey, int> index_;
};

struct EncodeOptions {
  int wavelengths = 0;               // 0: the instance budget
  bool secondary_objective = false;  // add total flow below the wavelength count
};

/// RWA model. Computing requests are routed as two independent lightpaths to their destination.
IlpModel encode_rwa(const Instance& i, const EncodeOptions& opt = {});

/// RWCA model with a computing-node choice and three flow segments per computing request.
IlpModel encode_rwca(const Instance& i, Coupling coupling, const EncodeOptions& opt = {});

/// encode_rwa for Bypass, encode_rwca otherwise, sized by cfg.budget(i).
IlpModel encode(const Instance& i, const SolveConfig& cfg);

/// CPLEX-style LP text: Minimize, Subject To, Bounds, Binaries, End.
std::string export_lp(const IlpModel& m);

class DecodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Assignment = std::map<VarKey, int>;

/*
  Checks every constraint (variables missing from `values` are 0) and throws
  DecodeError naming the first violated one. Lightpaths are recovered by
  walking unit flows from source to sink; loops met on the way and leftover
  circulations are dropped.
*/
Solution decode_solution(const IlpModel& m, const Assignment& values, const Instance& i);

/*
  Reads "name value" lines (Gurobi .sol, HiGHS solution files and similar).
  Lines whose first token is not a model variable name are skipped; reading
  stops at a dual-values section. Values must be within 1e-6 of 0 or 1.
*/
Assignment parse_assignment(std::string_view text);

/// Variable values realising `s` in model `m` (inverse of decode_solution).
Assignment assignment_from_solution(const IlpModel& m, const Solution& s, const Instance& i);

}  // namespace occin

#include "collapse/model_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "collapse/errors.hpp"

namespace collapse {

namespace {

[[noreturn]] void schema(const std::string& message) { throw Error(ErrorKind::SchemaViolation, message); }

void only_keys(const Json& j, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!j.is_object()) schema(where + " must be an object");
  const std::set<std::string> keys(allowed.begin(), allowed.end());
  for (const auto& [key, value] : j.items()) {
    if (!keys.count(key)) schema("unknown key \"" + key + "\" in " + where);
  }
}

const Json& require(const Json& j, const std::string& where, const char* key) {
  if (!j.contains(key)) schema(where + " is missing \"" + key + "\"");
  return j.at(key);
}

std::string scalar_text(const Json& j, const std::string& what) {
  if (j.is_number_integer()) return j.dump();
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_float()) schema(what + " must be an exact rational (\"p/q\" or an integer), got float " + j.dump());
  schema(what + " must be a rational string or an integer");
}

Rational rational_of(const Json& j, const std::string& what) {
  try {
    return parse_rational(scalar_text(j, what));
  } catch (const Error& e) {
    schema(what + ": " + e.what());
  }
}

Exact exact_of(const Json& j, const std::string& what) {
  try {
    return Exact::parse(scalar_text(j, what));
  } catch (const Error& e) {
    schema(what + ": " + e.what());
  }
}

int int_of(const Json& j, const std::string& what) {
  if (!j.is_number_integer()) schema(what + " must be an integer");
  return j.get<int>();
}

std::uint64_t count_of(const Json& j, const std::string& what) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0)) {
    schema(what + " must be a non-negative integer");
  }
  return j.get<std::uint64_t>();
}

bool bool_of(const Json& j, const std::string& what) {
  if (!j.is_boolean()) schema(what + " must be true or false");
  return j.get<bool>();
}

Json rational_json(const Rational& r) { return to_string(r); }

}  // namespace

SpaceDescriptor space_from_json(const Json& j) {
  if (!j.is_object()) schema("space must be an object with a \"type\"");
  const Json& type_json = require(j, "space", "type");
  if (!type_json.is_string()) schema("space type must be a string");
  const std::string type = type_json.get<std::string>();
  const std::string where = "space \"" + type + "\"";
  SpaceDescriptor out;
  if (type == "sphere") {
    only_keys(j, where, {"type", "n", "radius"});
    Sphere s{int_of(require(j, where, "n"), "sphere n"), 1};
    if (j.contains("radius")) s.radius = rational_of(j.at("radius"), "sphere radius");
    out = s;
  } else if (type == "flat-torus") {
    only_keys(j, where, {"type", "gram"});
    const Json& gram = require(j, where, "gram");
    if (!gram.is_array()) schema("flat-torus gram must be an array of rows");
    FlatTorus t;
    for (const Json& row : gram) {
      if (!row.is_array()) schema("flat-torus gram must be an array of rows");
      std::vector<Rational> r;
      for (const Json& x : row) r.push_back(rational_of(x, "gram entry"));
      t.gram.push_back(std::move(r));
    }
    out = t;
  } else if (type == "complex-projective") {
    only_keys(j, where, {"type", "n"});
    out = ComplexProjective{int_of(require(j, where, "n"), "complex-projective n")};
  } else if (type == "quaternionic-projective") {
    only_keys(j, where, {"type", "n"});
    out = QuaternionicProjective{int_of(require(j, where, "n"), "quaternionic-projective n")};
  } else if (type == "so3") {
    only_keys(j, where, {"type", "radius"});
    SO3 s{1};
    if (j.contains("radius")) s.radius = rational_of(j.at("radius"), "so3 radius");
    out = s;
  } else if (type == "explicit") {
    only_keys(j, where, {"type", "entries", "validBelow"});
    Explicit e;
    e.valid_below = exact_of(require(j, where, "validBelow"), "validBelow");
    const Json& entries = require(j, where, "entries");
    if (!entries.is_array()) schema("explicit entries must be an array");
    for (const Json& entry : entries) {
      only_keys(entry, "explicit entry", {"value", "multiplicity"});
      e.entries.push_back({exact_of(require(entry, "explicit entry", "value"), "eigenvalue"),
                           count_of(require(entry, "explicit entry", "multiplicity"), "multiplicity")});
    }
    out = e;
  } else {
    schema("unknown space type \"" + type + "\"");
  }
  validate(out);
  return out;
}

Json space_to_json(const SpaceDescriptor& space) {
  return std::visit(
      [](const auto& s) -> Json {
        using T = std::decay_t<decltype(s)>;
        Json j;
        if constexpr (std::is_same_v<T, Sphere>) {
          j = {{"type", "sphere"}, {"n", s.n}, {"radius", rational_json(s.radius)}};
        } else if constexpr (std::is_same_v<T, FlatTorus>) {
          Json gram = Json::array();
          for (const auto& row : s.gram) {
            Json r = Json::array();
            for (const Rational& x : row) r.push_back(rational_json(x));
            gram.push_back(r);
          }
          j = {{"type", "flat-torus"}, {"gram", gram}};
        } else if constexpr (std::is_same_v<T, ComplexProjective>) {
          j = {{"type", "complex-projective"}, {"n", s.n}};
        } else if constexpr (std::is_same_v<T, QuaternionicProjective>) {
          j = {{"type", "quaternionic-projective"}, {"n", s.n}};
        } else if constexpr (std::is_same_v<T, SO3>) {
          j = {{"type", "so3"}, {"radius", rational_json(s.radius)}};
        } else {
          Json entries = Json::array();
          for (const EigenvalueEntry& e : s.entries) {
            entries.push_back({{"value", e.value.str()}, {"multiplicity", e.multiplicity}});
          }
          j = {{"type", "explicit"}, {"entries", entries}, {"validBelow", s.valid_below.str()}};
        }
        return j;
      },
      space);
}

SubmersionModel model_from_json(const Json& j) {
  only_keys(j, "model", {"name", "fiber", "base", "aNormSq", "calibrate", "flags", "pinching"});
  SubmersionModel m;
  const Json& name = require(j, "model", "name");
  if (!name.is_string()) schema("model name must be a string");
  m.name = name.get<std::string>();

  const Json& fiber = require(j, "model", "fiber");
  only_keys(fiber, "fiber", {"space", "dim", "scal", "ricLower"});
  m.fiber_space = space_from_json(require(fiber, "fiber", "space"));
  m.fiber_dim = int_of(require(fiber, "fiber", "dim"), "fiber dim");
  m.scal_fiber = rational_of(require(fiber, "fiber", "scal"), "fiber scal");
  if (fiber.contains("ricLower")) m.ric_fiber_lower = rational_of(fiber.at("ricLower"), "fiber ricLower");

  const Json& base = require(j, "model", "base");
  only_keys(base, "base", {"space", "dim", "scal"});
  m.base_space = space_from_json(require(base, "base", "space"));
  m.base_dim = int_of(require(base, "base", "dim"), "base dim");
  m.scal_base = rational_of(require(base, "base", "scal"), "base scal");

  const bool has_a = j.contains("aNormSq");
  const bool has_cal = j.contains("calibrate");
  if (has_a == has_cal) schema("exactly one of \"aNormSq\" and \"calibrate\" is required");
  if (has_a) {
    m.a_norm_sq = rational_of(j.at("aNormSq"), "aNormSq");
  } else {
    const Json& cal = j.at("calibrate");
    only_keys(cal, "calibrate", {"totalScalAtOne"});
    m.a_norm_sq = calibrate_a_norm(m.scal_fiber, m.scal_base,
                                   rational_of(require(cal, "calibrate", "totalScalAtOne"), "totalScalAtOne"));
  }

  if (j.contains("flags")) {
    const Json& flags = j.at("flags");
    only_keys(flags, "flags", {"product", "homogeneous"});
    if (flags.contains("product")) m.is_product = bool_of(flags.at("product"), "flags.product");
    if (flags.contains("homogeneous")) m.is_homogeneous = bool_of(flags.at("homogeneous"), "flags.homogeneous");
  }

  if (j.contains("pinching")) {
    const Json& p = j.at("pinching");
    only_keys(p, "pinching", {"k1", "k2", "tau", "ricMLowerAtTau", "mu1", "phi1"});
    PinchingData data;
    data.k1 = rational_of(require(p, "pinching", "k1"), "k1");
    data.k2 = rational_of(require(p, "pinching", "k2"), "k2");
    if (p.contains("tau")) data.tau = rational_of(p.at("tau"), "tau");
    if (p.contains("ricMLowerAtTau")) data.ric_total_lower_at_tau = rational_of(p.at("ricMLowerAtTau"), "ricMLowerAtTau");
    if (p.contains("mu1")) data.mu1 = exact_of(p.at("mu1"), "mu1");
    if (p.contains("phi1")) data.phi1 = exact_of(p.at("phi1"), "phi1");
    m.pinching = data;
  }
  validate(m);
  return m;
}

Json model_to_json(const SubmersionModel& m) {
  Json fiber = {{"space", space_to_json(m.fiber_space)}, {"dim", m.fiber_dim}, {"scal", rational_json(m.scal_fiber)}};
  if (m.ric_fiber_lower) fiber["ricLower"] = rational_json(*m.ric_fiber_lower);
  Json j = {{"name", m.name},
            {"fiber", fiber},
            {"base", {{"space", space_to_json(m.base_space)}, {"dim", m.base_dim}, {"scal", rational_json(m.scal_base)}}},
            {"aNormSq", rational_json(m.a_norm_sq)},
            {"flags", {{"product", m.is_product}, {"homogeneous", m.is_homogeneous}}}};
  if (m.pinching) {
    const PinchingData& p = *m.pinching;
    Json pj = {{"k1", rational_json(p.k1)}, {"k2", rational_json(p.k2)}, {"tau", rational_json(p.tau)}};
    if (p.ric_total_lower_at_tau) pj["ricMLowerAtTau"] = rational_json(*p.ric_total_lower_at_tau);
    if (p.mu1) pj["mu1"] = p.mu1->str();
    if (p.phi1) pj["phi1"] = p.phi1->str();
    j["pinching"] = pj;
  }
  return j;
}

SubmersionModel load_model(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::InvalidArgument, "cannot open model file " + path.string());
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    schema("malformed JSON in " + path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

Json degeneracies_to_json(const SubmersionModel& model, const DegeneracyList& list, const Rational& t_min,
                          const Rational& t_max) {
  Json records = Json::array();
  for (const DegeneracyRecord& r : list.records) {
    records.push_back({
        {"tApprox", r.t_approx()},
        {"quadratic",
         {{"a2", r.u.a2().str()},
          {"a1", r.u.a1().str()},
          {"a0", r.u.a0().str()},
          {"branch", branch_name(r.u.branch())},
          {"lo", to_string(r.u.lo())},
          {"hi", to_string(r.u.hi())}}},
        {"eta", r.eta.str()},
        {"etaIndex", r.eta_index},
        {"multiplicity", r.multiplicity},
        {"jJump", r.j_jump},
        {"certifiedBy", certification_name(r.certified_by)},
    });
  }
  Json j = {{"model", model.name},
            {"tMin", to_string(t_min)},
            {"tMax", to_string(t_max)},
            {"scalIndependentOfT", list.scal_independent_of_t},
            {"locallyRigid", list.locally_rigid},
            {"records", records}};
  return j;
}

DegeneracyList degeneracies_from_json(const Json& j) {
  DegeneracyList out;
  out.scal_independent_of_t = bool_of(require(j, "degeneracies", "scalIndependentOfT"), "scalIndependentOfT");
  out.locally_rigid = bool_of(require(j, "degeneracies", "locallyRigid"), "locallyRigid");
  const Json& records = require(j, "degeneracies", "records");
  if (!records.is_array()) schema("records must be an array");
  for (const Json& r : records) {
    const Json& q = require(r, "record", "quadratic");
    const Json& branch = require(q, "quadratic", "branch");
    if (!branch.is_string()) schema("branch must be a string");
    const Json& cert = require(r, "record", "certifiedBy");
    Certification c = Certification::None;
    if (cert == "equivariant") c = Certification::Equivariant;
    else if (cert == "morse-index") c = Certification::MorseIndex;
    else if (cert != "none") schema("unknown certification " + cert.dump());
    const Json& jump = require(r, "record", "jJump");
    if (!jump.is_number_integer()) schema("jJump must be an integer");
    out.records.push_back({QuadraticRoot::from_descriptor(exact_of(require(q, "quadratic", "a2"), "a2"),
                                                          exact_of(require(q, "quadratic", "a1"), "a1"),
                                                          exact_of(require(q, "quadratic", "a0"), "a0"),
                                                          parse_branch(branch.get<std::string>()),
                                                          rational_of(require(q, "quadratic", "lo"), "lo"),
                                                          rational_of(require(q, "quadratic", "hi"), "hi")),
                           exact_of(require(r, "record", "eta"), "eta"),
                           count_of(require(r, "record", "multiplicity"), "multiplicity"),
                           static_cast<std::size_t>(count_of(require(r, "record", "etaIndex"), "etaIndex")),
                           jump.get<std::int64_t>(), c});
  }
  return out;
}

}  // namespace collapse

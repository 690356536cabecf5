#pragma once
// Layered arithmetic circuits with a fixed shape: inside a layer, addition
// gates (fan-in >= 1) come first and multiplication gates (fan-in exactly 2)
// second; mul gates read only this layer's adds, and the next layer's adds
// read only this layer's mul outputs. Values needed later must be carried
// through a (v)*(1) mul gate. Total degree doubles per layer.
//
// Text format, one gate per line, '#' starts a comment:
//   layer <l> add <id> <input...>
//   layer <l> mul <id> <in1> <in2>
// Layer-1 add inputs are named x1..xn (n is inferred as the largest index
// used); deeper adds name the previous layer's mul gates. An unsigned integer
// token that is not a gate id is a field constant, reduced by the field at
// evaluation time. Gate ids shadow both input names and integer literals.
//
// Shape violations are reported as data by validate_circuit so that circuit
// files can be diagnosed without try/catch; malformed lines (wrong arity,
// unknown keywords, duplicate ids) are parse errors.

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyshard/field.hpp"

namespace polyshard {

enum class GateKind { Add, Mul };

struct GateRef {
  enum class Kind { Input, Const, AddGate, MulGate, Unknown };
  Kind kind = Kind::Unknown;
  std::size_t layer = 0;      // gate refs only, 1-based
  std::size_t index = 0;      // input slot or position within the layer's kind list
  std::uint64_t literal = 0;  // Const only
};

struct Gate {
  GateKind kind = GateKind::Add;
  std::string id;
  std::vector<std::string> input_tokens;
  std::vector<GateRef> refs;  // parallel to input_tokens, filled by parse_circuit
};

struct ArithmeticCircuit {
  std::size_t inputs = 0;
  std::vector<std::vector<Gate>> layers;  // declaration order within each layer
};

// condition 1: mul fan-in is two        condition 2: add fan-in is >= 1
// condition 3: adds precede muls        condition 4: in-layer edges are add->mul
// condition 5: cross-layer edges are prev-mul->add
// condition 0: an input token that names nothing
struct CircuitViolation {
  int condition = 0;
  std::string gate;
  std::string detail;
};

namespace detail {

inline bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char ch : s)
    if (ch < '0' || ch > '9') return false;
  return true;
}

}  // namespace detail

inline ArithmeticCircuit parse_circuit(const std::string& text) {
  ArithmeticCircuit c;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::vector<std::string> tok;
    for (std::string t; ls >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto fail = [&](const std::string& why) -> void {
      throw std::invalid_argument("circuit line " + std::to_string(lineno) + ": " + why);
    };
    if (tok[0] != "layer") fail("expected 'layer', got '" + tok[0] + "'");
    if (tok.size() < 4) fail("need 'layer <l> add|mul <id> <inputs...>'");
    if (!detail::all_digits(tok[1]) || tok[1].size() > 2)
      fail("bad layer number '" + tok[1] + "'");
    std::size_t l = std::stoul(tok[1]);
    if (l < 1 || l > 62) fail("layer number must be in 1..62");
    Gate g;
    if (tok[2] == "add")
      g.kind = GateKind::Add;
    else if (tok[2] == "mul")
      g.kind = GateKind::Mul;
    else
      fail("gate kind must be add or mul, got '" + tok[2] + "'");
    g.id = tok[3];
    g.input_tokens.assign(tok.begin() + 4, tok.end());
    if (c.layers.size() < l) c.layers.resize(l);
    c.layers[l - 1].push_back(std::move(g));
  }

  std::map<std::string, GateRef> ids;
  for (std::size_t li = 0; li < c.layers.size(); ++li) {
    std::size_t adds = 0, muls = 0;
    for (const Gate& g : c.layers[li]) {
      GateRef r;
      r.layer = li + 1;
      if (g.kind == GateKind::Add) {
        r.kind = GateRef::Kind::AddGate;
        r.index = adds++;
      } else {
        r.kind = GateRef::Kind::MulGate;
        r.index = muls++;
      }
      if (!ids.emplace(g.id, r).second)
        throw std::invalid_argument("circuit: duplicate gate id '" + g.id + "'");
    }
  }

  for (auto& layer : c.layers)
    for (Gate& g : layer)
      for (const std::string& tok : g.input_tokens) {
        GateRef r;
        if (auto it = ids.find(tok); it != ids.end()) {
          r = it->second;
        } else if (tok.size() >= 2 && tok[0] == 'x' &&
                   detail::all_digits(tok.substr(1))) {
          if (tok.size() > 6)
            throw std::invalid_argument("circuit: input index too large in '" + tok + "'");
          std::size_t j = std::stoul(tok.substr(1));
          if (j >= 1) {
            r.kind = GateRef::Kind::Input;
            r.index = j - 1;
            if (c.inputs < j) c.inputs = j;
          }
        } else if (detail::all_digits(tok)) {
          if (tok.size() > 19)
            throw std::invalid_argument("circuit: constant '" + tok + "' too large");
          r.kind = GateRef::Kind::Const;
          r.literal = std::stoull(tok);
        }
        g.refs.push_back(r);
      }
  return c;
}

inline ArithmeticCircuit load_circuit(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open circuit file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_circuit(buf.str());
}

inline std::optional<CircuitViolation> validate_circuit(const ArithmeticCircuit& c) {
  for (std::size_t li = 0; li < c.layers.size(); ++li) {
    const std::size_t l = li + 1;
    bool seen_mul = false;
    for (const Gate& g : c.layers[li]) {
      if (g.kind == GateKind::Add && seen_mul)
        return CircuitViolation{3, g.id,
                                "addition gate declared after a multiplication gate in layer " +
                                    std::to_string(l)};
      if (g.kind == GateKind::Mul) {
        seen_mul = true;
        if (g.refs.size() != 2)
          return CircuitViolation{1, g.id,
                                  "multiplication gate has " + std::to_string(g.refs.size()) +
                                      " inputs, needs exactly 2"};
      } else if (g.refs.empty()) {
        return CircuitViolation{2, g.id, "addition gate has no inputs"};
      }
      for (std::size_t ti = 0; ti < g.refs.size(); ++ti) {
        const GateRef& r = g.refs[ti];
        const std::string& tok = g.input_tokens[ti];
        if (r.kind == GateRef::Kind::Unknown)
          return CircuitViolation{0, g.id, "input '" + tok + "' names nothing"};
        if (g.kind == GateKind::Add) {
          if (r.kind == GateRef::Kind::Const) continue;
          if (r.kind == GateRef::Kind::Input) {
            if (l == 1) continue;
            return CircuitViolation{5, g.id,
                                    "layer " + std::to_string(l) +
                                        " addition gate reads circuit input '" + tok +
                                        "'; only the previous layer's mul outputs cross layers"};
          }
          if (r.layer == l)
            return CircuitViolation{4, g.id,
                                    "addition gate reads same-layer gate '" + tok +
                                        "'; in-layer edges run only add->mul"};
          if (r.kind != GateRef::Kind::MulGate || r.layer + 1 != l)
            return CircuitViolation{5, g.id,
                                    "addition gate reads '" + tok + "'; layer " +
                                        std::to_string(l) + " inputs are layer " +
                                        std::to_string(l - 1) + "'s mul outputs"};
        } else {
          if (r.kind == GateRef::Kind::AddGate && r.layer == l) continue;
          if ((r.kind == GateRef::Kind::AddGate || r.kind == GateRef::Kind::MulGate) &&
              r.layer != l)
            return CircuitViolation{5, g.id,
                                    "multiplication gate reads cross-layer gate '" + tok +
                                        "'; its inputs must be this layer's addition gates"};
          return CircuitViolation{4, g.id,
                                  "multiplication gate input '" + tok +
                                      "' is not one of this layer's addition gates"};
        }
      }
    }
  }
  return std::nullopt;
}

inline std::size_t mul_count(const ArithmeticCircuit& c, std::size_t layer) {
  if (layer < 1 || layer > c.layers.size())
    throw std::invalid_argument("mul_count: layer out of range");
  std::size_t n = 0;
  for (const Gate& g : c.layers[layer - 1])
    if (g.kind == GateKind::Mul) ++n;
  return n;
}

inline std::size_t output_arity(const ArithmeticCircuit& c) {
  return c.layers.empty() ? 0 : mul_count(c, c.layers.size());
}

// what a layer consumes: the circuit inputs for layer 1, the previous layer's
// mul outputs after that
inline std::size_t layer_input_arity(const ArithmeticCircuit& c, std::size_t layer) {
  if (layer < 1 || layer > c.layers.size())
    throw std::invalid_argument("layer_input_arity: layer out of range");
  return layer == 1 ? c.inputs : mul_count(c, layer - 1);
}

// upper bound on total degree; exact when every mul multiplies two full-degree
// operands
inline std::uint64_t circuit_degree(const ArithmeticCircuit& c) {
  return std::uint64_t{1} << c.layers.size();
}

namespace detail {

// maps one resolved input to its value; layer_inputs carries the circuit
// inputs (layer 1) or the previous layer's mul outputs, add_vals this layer's
// already-evaluated adds. Anything outside the validated shape throws.
template <FieldLike F>
Fe circuit_slot(const F& f, const GateRef& r, std::size_t layer,
                const std::vector<Fe>& layer_inputs, const std::vector<Fe>& add_vals,
                bool mul_side) {
  switch (r.kind) {
    case GateRef::Kind::Const:
      if (!mul_side) return f.from_u64(r.literal);
      break;
    case GateRef::Kind::Input:
      if (!mul_side && layer == 1 && r.index < layer_inputs.size())
        return layer_inputs[r.index];
      break;
    case GateRef::Kind::MulGate:
      if (!mul_side && r.layer + 1 == layer && r.index < layer_inputs.size())
        return layer_inputs[r.index];
      break;
    case GateRef::Kind::AddGate:
      if (mul_side && r.layer == layer && r.index < add_vals.size())
        return add_vals[r.index];
      break;
    case GateRef::Kind::Unknown:
      break;
  }
  throw std::invalid_argument("circuit evaluation needs a structure that passes validation");
}

}  // namespace detail

// outputs of one layer's mul gates given that layer's input vector; each add
// gate is evaluated once. Callers are expected to have validated the circuit.
template <FieldLike F>
std::vector<Fe> eval_layer(const F& f, const ArithmeticCircuit& c, std::size_t layer,
                           const std::vector<Fe>& layer_inputs) {
  if (layer_inputs.size() != layer_input_arity(c, layer))
    throw std::invalid_argument("eval_layer: layer " + std::to_string(layer) + " expects " +
                                std::to_string(layer_input_arity(c, layer)) + " inputs, got " +
                                std::to_string(layer_inputs.size()));
  std::vector<Fe> add_vals, mul_vals;
  for (const Gate& g : c.layers[layer - 1]) {
    if (g.kind == GateKind::Add) {
      if (g.refs.empty())
        throw std::invalid_argument("circuit evaluation needs a structure that passes validation");
      Fe acc = detail::circuit_slot(f, g.refs[0], layer, layer_inputs, add_vals, false);
      for (std::size_t i = 1; i < g.refs.size(); ++i)
        acc = f.add(acc, detail::circuit_slot(f, g.refs[i], layer, layer_inputs, add_vals, false));
      add_vals.push_back(acc);
    } else {
      if (g.refs.size() != 2)
        throw std::invalid_argument("circuit evaluation needs a structure that passes validation");
      Fe a = detail::circuit_slot(f, g.refs[0], layer, layer_inputs, add_vals, true);
      Fe b = detail::circuit_slot(f, g.refs[1], layer, layer_inputs, add_vals, true);
      mul_vals.push_back(f.mul(a, b));
    }
  }
  return mul_vals;
}

template <FieldLike F>
std::vector<Fe> eval_circuit(const F& f, const ArithmeticCircuit& c,
                             const std::vector<Fe>& inputs) {
  if (auto v = validate_circuit(c))
    throw std::invalid_argument("eval_circuit: gate '" + v->gate + "': " + v->detail);
  if (inputs.size() != c.inputs)
    throw std::invalid_argument("eval_circuit: expected " + std::to_string(c.inputs) +
                                " inputs, got " + std::to_string(inputs.size()));
  if (c.layers.empty()) return {};
  std::vector<Fe> cur = inputs;
  for (std::size_t l = 1; l <= c.layers.size(); ++l) cur = eval_layer(f, c, l, cur);
  return cur;
}

// one mul gate of one layer as a standalone degree-2 function of the layer's
// input vector; shared adds are recomputed per view, so batch callers should
// prefer eval_layer
struct LayerView {
  const ArithmeticCircuit* circuit = nullptr;
  std::size_t layer = 0;  // 1-based
  std::size_t mult = 0;   // position among the layer's mul gates

  template <FieldLike F>
  Fe operator()(const F& f, const std::vector<Fe>& layer_inputs) const {
    const ArithmeticCircuit& c = *circuit;
    if (layer_inputs.size() != layer_input_arity(c, layer))
      throw std::invalid_argument("layer view: wrong input arity");
    const Gate* target = nullptr;
    std::vector<const Gate*> adds;
    std::size_t mi = 0;
    for (const Gate& g : c.layers[layer - 1]) {
      if (g.kind == GateKind::Add)
        adds.push_back(&g);
      else if (mi++ == mult)
        target = &g;
    }
    if (target == nullptr || target->refs.size() != 2)
      throw std::invalid_argument("layer view: no such multiplication gate");
    static const std::vector<Fe> kNoAdds;
    auto add_value = [&](const GateRef& r) -> Fe {
      if (r.kind != GateRef::Kind::AddGate || r.layer != layer || r.index >= adds.size())
        throw std::invalid_argument(
            "circuit evaluation needs a structure that passes validation");
      const Gate& g = *adds[r.index];
      Fe acc = detail::circuit_slot(f, g.refs.at(0), layer, layer_inputs, kNoAdds, false);
      for (std::size_t i = 1; i < g.refs.size(); ++i)
        acc = f.add(acc, detail::circuit_slot(f, g.refs[i], layer, layer_inputs, kNoAdds, false));
      return acc;
    };
    return f.mul(add_value(target->refs[0]), add_value(target->refs[1]));
  }
};

inline std::vector<LayerView> layer_views(const ArithmeticCircuit& c, std::size_t layer) {
  if (auto v = validate_circuit(c))
    throw std::invalid_argument("layer_views: gate '" + v->gate + "': " + v->detail);
  if (layer < 1 || layer > c.layers.size())
    throw std::invalid_argument("layer_views: layer out of range");
  std::vector<LayerView> out;
  for (std::size_t i = 0, n = mul_count(c, layer); i < n; ++i)
    out.push_back(LayerView{&c, layer, i});
  return out;
}

// Boolean function as a sum of full monomials: each term is an n-bit mask a,
// contributing prod_i (bit i-1 of a ? x_i : y_i) with y_i = x_i + 1. Whichever
// of the on-set and off-set is smaller is stored (the off-set form carries a
// +1), so a lifted function never exceeds 2^(n-1) terms. Meaningful over
// characteristic-2 fields on 0/1 inputs, where the two forms agree because
// the full monomial set sums to prod_i (x_i + y_i) = 1.
struct BooleanPolynomial {
  std::size_t vars = 0;
  bool constant_one = false;
  std::vector<std::uint32_t> terms;  // ascending masks
};

inline BooleanPolynomial bool_to_poly(const std::vector<bool>& truth_table) {
  const std::size_t sz = truth_table.size();
  if (sz == 0 || (sz & (sz - 1)) != 0)
    throw std::invalid_argument("bool_to_poly: table size must be a power of two");
  std::size_t n = 0;
  while ((std::size_t{1} << n) < sz) ++n;
  if (n > 16) throw std::length_error("bool_to_poly: more than 16 variables");
  std::vector<std::uint32_t> on, off;
  for (std::uint32_t a = 0; a < sz; ++a) (truth_table[a] ? on : off).push_back(a);
  BooleanPolynomial p;
  p.vars = n;
  if (on.size() <= off.size()) {
    p.terms = std::move(on);
  } else {
    p.constant_one = true;
    p.terms = std::move(off);
  }
  return p;
}

template <FieldLike F>
Fe eval_bool_poly(const F& f, const BooleanPolynomial& p, const std::vector<Fe>& x) {
  if (x.size() != p.vars)
    throw std::invalid_argument("eval_bool_poly: expected " + std::to_string(p.vars) +
                                " inputs, got " + std::to_string(x.size()));
  const Fe one = f.one();
  std::vector<Fe> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) y[i] = f.add(x[i], one);
  Fe acc = p.constant_one ? one : f.zero();
  for (std::uint32_t a : p.terms) {
    Fe prod = one;
    for (std::size_t i = 0; i < p.vars; ++i)
      prod = f.mul(prod, ((a >> i) & 1u) != 0 ? x[i] : y[i]);
    acc = f.add(acc, prod);
  }
  return acc;
}

}  // namespace polyshard

#include <catch2/catch_amalgamated.hpp>

#include <polyshard/circuit.hpp>
#include <polyshard/field.hpp>
#include <polyshard/poly.hpp>

#include <array>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>
#include <vector>

using namespace polyshard;

namespace {

// (x2+x3)(x3+x4)(x1+x2+x3+x4)(x2+x3+x4+x5) as a two-layer circuit; the
// factored form is the independent oracle for the composed evaluation
const std::string kFourFactor = R"(# product of four linear forms, two layers
layer 1 add a1 x1 x2
layer 1 add a2 x2 x3
layer 1 add a3 x3 x4
layer 1 add a4 x4 x5
layer 1 mul m1 a1 a2
layer 1 mul m2 a2 a3
layer 1 mul m3 a3 a4
layer 2 add b1 m1 m2
layer 2 add b2 m2 m3
layer 2 mul n1 b1 b2
)";

// x1*x2*(x1+1) = x1^2 x2 + x1 x2; keeps x1+1 alive into layer 2 through a
// (v)*(1) pass-through gate
const std::string kPassThrough = R"(layer 1 add a1 x1
layer 1 add a2 x1 1
layer 1 add a3 x2
layer 1 add a4 1
layer 1 mul m1 a1 a3
layer 1 mul m2 a2 a4
layer 2 add b1 m1
layer 2 add b2 m2
layer 2 mul n1 b1 b2
)";

const std::string kPairProduct = R"(layer 1 add a1 x1
layer 1 add a2 x2
layer 1 mul m1 a1 a2
)";

template <FieldLike F>
std::vector<Fe> fes(const F& f, std::initializer_list<std::uint64_t> xs) {
  std::vector<Fe> out;
  for (auto x : xs) out.push_back(f.from_u64(x));
  return out;
}

template <FieldLike F>
Fe four_factor_oracle(const F& f, const std::vector<Fe>& x) {
  Fe t1 = f.add(x[1], x[2]);
  Fe t2 = f.add(x[2], x[3]);
  Fe t3 = f.add(f.add(x[0], x[1]), t2);
  Fe t4 = f.add(t1, f.add(x[3], x[4]));
  return f.mul(f.mul(t1, t2), f.mul(t3, t4));
}

template <FieldLike F>
Fe pass_through_oracle(const F& f, const std::vector<Fe>& x) {
  return f.mul(f.mul(x[0], x[1]), f.add(x[0], f.one()));
}

}  // namespace

TEST_CASE("circuit text parses into the layered structure") {
  ArithmeticCircuit c = parse_circuit(kFourFactor);
  CHECK(c.inputs == 5);
  REQUIRE(c.layers.size() == 2);
  REQUIRE(c.layers[0].size() == 7);
  REQUIRE(c.layers[1].size() == 3);
  CHECK_FALSE(validate_circuit(c).has_value());

  SECTION("declaration order is preserved") {
    std::vector<std::string> ids;
    for (const Gate& g : c.layers[0]) ids.push_back(g.id);
    CHECK(ids == std::vector<std::string>{"a1", "a2", "a3", "a4", "m1", "m2", "m3"});
  }
  SECTION("shape accessors") {
    CHECK(mul_count(c, 1) == 3);
    CHECK(mul_count(c, 2) == 1);
    CHECK(output_arity(c) == 1);
    CHECK(layer_input_arity(c, 1) == 5);
    CHECK(layer_input_arity(c, 2) == 3);
    CHECK(circuit_degree(c) == 4);
    CHECK_THROWS_AS(mul_count(c, 0), std::invalid_argument);
    CHECK_THROWS_AS(mul_count(c, 3), std::invalid_argument);
  }
  SECTION("layer lines may appear in any order") {
    ArithmeticCircuit quartic = parse_circuit(
        "layer 2 add b m\nlayer 2 mul n b b\nlayer 1 add a x1\nlayer 1 mul m a a\n");
    CHECK_FALSE(validate_circuit(quartic).has_value());
    PrimeField f(17);
    CHECK(eval_circuit(f, quartic, fes(f, {2})) == fes(f, {16}));  // 2^4
  }
  SECTION("arity is the largest referenced input") {
    ArithmeticCircuit c3 = parse_circuit("layer 1 add a x3\nlayer 1 mul m a a\n");
    CHECK(c3.inputs == 3);
    PrimeField f(17);
    CHECK(eval_circuit(f, c3, fes(f, {7, 11, 2})) == fes(f, {4}));
  }
  SECTION("empty text is an empty circuit") {
    ArithmeticCircuit e = parse_circuit("  \n# only a comment\n");
    CHECK(e.layers.empty());
    CHECK(e.inputs == 0);
    CHECK(output_arity(e) == 0);
    CHECK(circuit_degree(e) == 1);
    CHECK_FALSE(validate_circuit(e).has_value());
    PrimeField f(17);
    CHECK(eval_circuit(f, e, {}).empty());
  }
}

TEST_CASE("malformed circuit lines are rejected at parse time") {
  CHECK_THROWS_AS(parse_circuit("layer 0 add a x1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_circuit("layer one add a x1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_circuit("ring 1 add a x1\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_circuit("layer 1 nand g x1 x2\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_circuit("layer 1 add\n"), std::invalid_argument);
  CHECK_THROWS_AS(parse_circuit("layer 1 add a x1\nlayer 1 add a x2\n"),
                  std::invalid_argument);  // duplicate id
  CHECK_THROWS_AS(parse_circuit("layer 1 add a 99999999999999999999\n"),
                  std::invalid_argument);  // constant literal overflow
}

TEST_CASE("structure checks report the first broken condition and gate") {
  auto violation = [](const std::string& text) {
    auto v = validate_circuit(parse_circuit(text));
    REQUIRE(v.has_value());
    return *v;
  };

  SECTION("multiplication fan-in must be two") {
    CircuitViolation v = violation(
        "layer 1 add a x1\nlayer 1 add b x2\nlayer 1 add c x1\nlayer 1 mul m a b c\n");
    CHECK(v.condition == 1);
    CHECK(v.gate == "m");
  }
  SECTION("addition fan-in must be at least one") {
    CircuitViolation v = violation("layer 1 add a\nlayer 1 mul m a a\n");
    CHECK(v.condition == 2);
    CHECK(v.gate == "a");
  }
  SECTION("additions come before multiplications") {
    CircuitViolation v =
        violation("layer 1 add a x1\nlayer 1 mul m a a\nlayer 1 add b x1\n");
    CHECK(v.condition == 3);
    CHECK(v.gate == "b");
  }
  SECTION("mul fed by a same-layer mul") {
    CircuitViolation v =
        violation("layer 1 add a x1\nlayer 1 mul m a a\nlayer 1 mul n m a\n");
    CHECK(v.condition == 4);
    CHECK(v.gate == "n");
  }
  SECTION("mul fed by a circuit input") {
    CircuitViolation v = violation("layer 1 add a x1\nlayer 1 mul m a x2\n");
    CHECK(v.condition == 4);
    CHECK(v.gate == "m");
  }
  SECTION("add fed by a same-layer add") {
    CircuitViolation v =
        violation("layer 1 add a x1\nlayer 1 add b a\nlayer 1 mul m a b\n");
    CHECK(v.condition == 4);
    CHECK(v.gate == "b");
  }
  SECTION("later layers cannot read circuit inputs") {
    CircuitViolation v = violation(
        "layer 1 add a x1\nlayer 1 mul m a a\nlayer 2 add b x1\nlayer 2 mul n b b\n");
    CHECK(v.condition == 5);
    CHECK(v.gate == "b");
  }
  SECTION("later layers cannot read the previous layer's adds") {
    CircuitViolation v = violation(
        "layer 1 add a x1\nlayer 1 mul m a a\nlayer 2 add b a\nlayer 2 mul n b b\n");
    CHECK(v.condition == 5);
    CHECK(v.gate == "b");
  }
  SECTION("mul fed by a previous-layer mul") {
    CircuitViolation v = violation(
        "layer 1 add a x1\nlayer 1 mul m a a\nlayer 2 add b m\nlayer 2 mul n b m\n");
    CHECK(v.condition == 5);
    CHECK(v.gate == "n");
  }
  SECTION("dangling reference") {
    CircuitViolation v = violation("layer 1 add a foo\nlayer 1 mul m a a\n");
    CHECK(v.condition == 0);
    CHECK(v.gate == "a");
  }
  SECTION("scan order picks the earliest bad gate") {
    CircuitViolation v =
        violation("layer 1 add a x1\nlayer 1 mul m a a a\nlayer 1 add b x1\n");
    CHECK(v.condition == 1);  // the bad mul is declared before the misplaced add
    CHECK(v.gate == "m");
  }
}

TEST_CASE("four-factor circuit evaluates over GF(17)") {
  ArithmeticCircuit c = parse_circuit(kFourFactor);
  PrimeField f(17);

  CHECK(eval_circuit(f, c, fes(f, {1, 1, 1, 1, 1})) == fes(f, {13}));  // 2*2*4*4 = 64
  CHECK(eval_circuit(f, c, fes(f, {0, 0, 0, 0, 0})) == fes(f, {0}));
  CHECK(eval_circuit(f, c, fes(f, {1, 2, 3, 4, 5})) == fes(f, {4}));  // 5*7*10*14 = 4900

  SECTION("matches the factored oracle on random inputs") {
    std::mt19937_64 rng(411);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Fe> x;
      for (int i = 0; i < 5; ++i) x.push_back(f.from_u64(rng() % 17));
      CHECK(eval_circuit(f, c, x) == std::vector<Fe>{four_factor_oracle(f, x)});
    }
  }
  SECTION("matches the factored oracle over the default prime") {
    PrimeField big(PrimeField::kDefaultPrime);
    std::mt19937_64 rng(412);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Fe> x;
      for (int i = 0; i < 5; ++i) x.push_back(big.from_u64(rng()));
      CHECK(eval_circuit(big, c, x) == std::vector<Fe>{four_factor_oracle(big, x)});
    }
  }
  SECTION("gate operations are counted exactly") {
    OpCounter ops;
    CountedField<PrimeField> cf(f, ops);
    eval_circuit(cf, c, fes(f, {3, 1, 4, 1, 5}));
    CHECK(ops.additions == 6);        // four fan-in-2 adds, then two
    CHECK(ops.multiplications == 4);  // three layer-1 muls, then one
    CHECK(ops.inversions == 0);
  }
}

TEST_CASE("single-layer product circuit") {
  ArithmeticCircuit c = parse_circuit(kPairProduct);
  PrimeField f(17);
  CHECK(c.inputs == 2);
  CHECK(circuit_degree(c) == 2);
  CHECK(eval_circuit(f, c, fes(f, {3, 5})) == fes(f, {15}));

  OpCounter ops;
  CountedField<PrimeField> cf(f, ops);
  eval_circuit(cf, c, fes(f, {3, 5}));
  CHECK(ops.additions == 0);  // fan-in-1 adds are wires
  CHECK(ops.multiplications == 1);
}

TEST_CASE("pass-through keeps a value alive across layers") {
  ArithmeticCircuit c = parse_circuit(kPassThrough);
  PrimeField f(17);
  CHECK_FALSE(validate_circuit(c).has_value());

  CHECK(eval_circuit(f, c, fes(f, {3, 5})) == fes(f, {9}));  // 45 + 15 = 60
  CHECK(eval_circuit(f, c, fes(f, {1, 1})) == fes(f, {2}));
  CHECK(eval_circuit(f, c, fes(f, {2, 3})) == fes(f, {1}));  // 12 + 6 = 18

  SECTION("matches x1^2 x2 + x1 x2 on random inputs") {
    PrimeField big(PrimeField::kDefaultPrime);
    std::mt19937_64 rng(413);
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Fe> x = {big.from_u64(rng()), big.from_u64(rng())};
      CHECK(eval_circuit(big, c, x) == std::vector<Fe>{pass_through_oracle(big, x)});
    }
  }
  SECTION("gate operations are counted exactly") {
    OpCounter ops;
    CountedField<PrimeField> cf(f, ops);
    eval_circuit(cf, c, fes(f, {3, 5}));
    CHECK(ops.additions == 1);  // only x1 + 1 is a real addition
    CHECK(ops.multiplications == 3);
  }
}

TEST_CASE("constants are reduced by the field") {
  ArithmeticCircuit c =
      parse_circuit("layer 1 add a x1 18\nlayer 1 add b x2\nlayer 1 mul m a b\n");
  PrimeField f(17);
  // 18 = 1 mod 17, so this is (x1+1)*x2
  CHECK(eval_circuit(f, c, fes(f, {3, 5})) == fes(f, {3}));  // 4*5 = 20
}

TEST_CASE("layer views expose per-gate evaluation") {
  ArithmeticCircuit c = parse_circuit(kFourFactor);
  PrimeField f(17);

  SECTION("first layer on (1,2,3,4,5)") {
    std::vector<LayerView> views = layer_views(c, 1);
    REQUIRE(views.size() == 3);
    std::vector<Fe> in = fes(f, {1, 2, 3, 4, 5});
    CHECK(views[0](f, in) == Fe{15});  // (1+2)(2+3)
    CHECK(views[1](f, in) == Fe{1});   // (2+3)(3+4) = 35
    CHECK(views[2](f, in) == Fe{12});  // (3+4)(4+5) = 63
  }
  SECTION("second layer on (1,2,3)") {
    std::vector<LayerView> views = layer_views(c, 2);
    REQUIRE(views.size() == 1);
    CHECK(views[0](f, fes(f, {1, 2, 3})) == Fe{15});  // (1+2)(2+3)
  }
  SECTION("views agree with whole-layer evaluation") {
    std::mt19937_64 rng(414);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Fe> in;
      for (int i = 0; i < 5; ++i) in.push_back(f.from_u64(rng() % 17));
      std::vector<Fe> all = eval_layer(f, c, 1, in);
      std::vector<LayerView> views = layer_views(c, 1);
      REQUIRE(all.size() == views.size());
      for (std::size_t a = 0; a < views.size(); ++a) CHECK(views[a](f, in) == all[a]);
    }
  }
  SECTION("whole-layer evaluation chains to the circuit output") {
    std::vector<Fe> in = fes(f, {1, 2, 3, 4, 5});
    std::vector<Fe> mid = eval_layer(f, c, 1, in);
    CHECK(mid == fes(f, {15, 1, 12}));
    CHECK(eval_layer(f, c, 2, mid) == fes(f, {4}));
  }
  SECTION("arity and range guards") {
    CHECK_THROWS_AS(eval_layer(f, c, 1, fes(f, {1, 2})), std::invalid_argument);
    CHECK_THROWS_AS(eval_layer(f, c, 3, fes(f, {1, 2, 3})), std::invalid_argument);
    CHECK_THROWS_AS(layer_views(c, 0), std::invalid_argument);
    std::vector<LayerView> views = layer_views(c, 2);
    CHECK_THROWS_AS(views[0](f, fes(f, {1, 2})), std::invalid_argument);
  }
}

TEST_CASE("a layer with no multiplications starves the next layer") {
  // layer 1 has no mul gates, so layer 2 has arity zero and only constants
  ArithmeticCircuit c = parse_circuit(
      "layer 1 add a x1\nlayer 2 add b 0\nlayer 2 add c 0\nlayer 2 mul n b c\n");
  PrimeField f(17);
  CHECK_FALSE(validate_circuit(c).has_value());
  CHECK(layer_input_arity(c, 2) == 0);
  CHECK(eval_circuit(f, c, fes(f, {5})) == fes(f, {0}));
  std::vector<LayerView> views = layer_views(c, 2);
  REQUIRE(views.size() == 1);
  CHECK(views[0](f, {}) == Fe{0});
}

TEST_CASE("composed degree stays within the per-layer bound") {
  PrimeField big(PrimeField::kDefaultPrime);

  SECTION("four factors: degree exactly 4") {
    ArithmeticCircuit c = parse_circuit(kFourFactor);
    REQUIRE(circuit_degree(c) == 4);
    // restrict to the line s -> s*(1,2,3,4,5); every add gate is homogeneous
    // linear, so the restriction is 4900 * s^4
    std::vector<Fe> xs, ys;
    std::vector<Fe> dir = fes(big, {1, 2, 3, 4, 5});
    for (std::uint64_t s = 0; s < 7; ++s) {
      std::vector<Fe> in;
      for (Fe d : dir) in.push_back(big.mul(d, big.from_u64(s)));
      xs.push_back(big.from_u64(s));
      ys.push_back(eval_circuit(big, c, in)[0]);
    }
    Poly g = interpolate(big, xs, ys);
    CHECK(g == Poly{Fe{0}, Fe{0}, Fe{0}, Fe{0}, Fe{4900}, Fe{0}, Fe{0}});
  }
  SECTION("pass-through: degree 3 within bound 4") {
    ArithmeticCircuit c = parse_circuit(kPassThrough);
    REQUIRE(circuit_degree(c) == 4);
    PrimeField f(17);
    // f(2s,3s) = 12 s^3 + 6 s^2
    std::vector<Fe> xs, ys;
    for (std::uint64_t s = 0; s < 5; ++s) {
      xs.push_back(f.from_u64(s));
      ys.push_back(eval_circuit(f, c, fes(f, {2 * s, 3 * s}))[0]);
    }
    Poly g = interpolate(f, xs, ys);
    CHECK(g == Poly{Fe{0}, Fe{0}, Fe{6}, Fe{12}, Fe{0}});
  }
}

TEST_CASE("circuit files load from disk") {
  std::string path = "four_factor_roundtrip.circuit";
  {
    std::ofstream out(path);
    out << kFourFactor;
  }
  ArithmeticCircuit c = load_circuit(path);
  PrimeField f(17);
  CHECK(eval_circuit(f, c, fes(f, {1, 1, 1, 1, 1})) == fes(f, {13}));
  std::remove(path.c_str());

  CHECK_THROWS_WITH(load_circuit("no_such_dir/missing.circuit"),
                    Catch::Matchers::ContainsSubstring("missing.circuit"));
}

TEST_CASE("evaluation guards") {
  ArithmeticCircuit c = parse_circuit(kFourFactor);
  PrimeField f(17);
  CHECK_THROWS_AS(eval_circuit(f, c, fes(f, {1, 2, 3, 4})), std::invalid_argument);

  ArithmeticCircuit bad =
      parse_circuit("layer 1 add a x1\nlayer 1 add b x2\nlayer 1 mul m a b b\n");
  CHECK_THROWS_AS(eval_circuit(f, bad, fes(f, {1, 2})), std::invalid_argument);
  CHECK_THROWS_AS(layer_views(bad, 1), std::invalid_argument);
}

TEST_CASE("boolean functions lift to monomial sums") {
  SECTION("AND keeps the on-set") {
    BooleanPolynomial p = bool_to_poly({false, false, false, true});
    CHECK(p.vars == 2);
    CHECK_FALSE(p.constant_one);
    CHECK(p.terms == std::vector<std::uint32_t>{3});  // x1 x2
  }
  SECTION("XOR is y1 x2 + x1 y2") {
    BooleanPolynomial p = bool_to_poly({false, true, true, false});
    CHECK_FALSE(p.constant_one);
    CHECK(p.terms == std::vector<std::uint32_t>{1, 2});
  }
  SECTION("OR flips to the off-set") {
    BooleanPolynomial p = bool_to_poly({false, true, true, true});
    CHECK(p.constant_one);  // 1 + y1 y2
    CHECK(p.terms == std::vector<std::uint32_t>{0});
  }
  SECTION("NOT is y1") {
    BooleanPolynomial p = bool_to_poly({true, false});
    CHECK_FALSE(p.constant_one);
    CHECK(p.terms == std::vector<std::uint32_t>{0});
  }
  SECTION("constants") {
    BooleanPolynomial zero = bool_to_poly({false, false, false, false});
    CHECK_FALSE(zero.constant_one);
    CHECK(zero.terms.empty());
    BooleanPolynomial one = bool_to_poly({true, true, true, true});
    CHECK(one.constant_one);
    CHECK(one.terms.empty());

    BinaryField f2(1);
    CHECK(eval_bool_poly(f2, zero, fes(f2, {1, 0})) == Fe{0});
    CHECK(eval_bool_poly(f2, one, fes(f2, {1, 0})) == Fe{1});
  }
  SECTION("table size guards") {
    CHECK_THROWS_AS(bool_to_poly({true, false, true}), std::invalid_argument);
    CHECK_THROWS_AS(bool_to_poly({}), std::invalid_argument);
    CHECK_THROWS_AS(bool_to_poly(std::vector<bool>(std::size_t{1} << 17, false)),
                    std::length_error);
  }
}

TEST_CASE("every 3-input boolean function evaluates correctly") {
  BinaryField f2(1);
  for (unsigned fn = 0; fn < 256; ++fn) {
    std::vector<bool> table(8);
    for (unsigned i = 0; i < 8; ++i) table[i] = (fn >> i) & 1u;
    BooleanPolynomial p = bool_to_poly(table);
    CHECK(p.terms.size() <= 4);  // at most 2^(n-1) monomials
    for (unsigned i = 0; i < 8; ++i) {
      std::vector<Fe> x;
      for (unsigned b = 0; b < 3; ++b) x.push_back(f2.embed_bit((i >> b) & 1u));
      CHECK(eval_bool_poly(f2, p, x) == f2.embed_bit(table[i] ? 1 : 0));
    }
  }
}

TEST_CASE("lifting commutes with binary-field embedding") {
  BinaryField f2(1);
  BinaryField f16(4);
  BinaryField f256(8);
  for (unsigned fn = 0; fn < 256; ++fn) {
    std::vector<bool> table(8);
    for (unsigned i = 0; i < 8; ++i) table[i] = (fn >> i) & 1u;
    BooleanPolynomial p = bool_to_poly(table);
    for (unsigned i = 0; i < 8; ++i) {
      std::vector<Fe> x2, x16, x256;
      for (unsigned b = 0; b < 3; ++b) {
        unsigned bit = (i >> b) & 1u;
        x2.push_back(f2.embed_bit(bit));
        x16.push_back(f16.embed_bit(bit));
        x256.push_back(f256.embed_bit(bit));
      }
      Fe want = f2.embed_bit(table[i] ? 1 : 0);
      CHECK(eval_bool_poly(f2, p, x2) == want);
      CHECK(eval_bool_poly(f16, p, x16) == want);   // 0/1 images coincide
      CHECK(eval_bool_poly(f256, p, x256) == want);
    }
  }
}

TEST_CASE("the full monomial set sums to one") {
  // sum over all assignments a of h_a equals prod_i (x_i + y_i) = 1
  BooleanPolynomial all{3, false, {0, 1, 2, 3, 4, 5, 6, 7}};
  BinaryField f2(1);
  BinaryField f16(4);
  for (unsigned i = 0; i < 8; ++i) {
    std::vector<Fe> x2, x16;
    for (unsigned b = 0; b < 3; ++b) {
      x2.push_back(f2.embed_bit((i >> b) & 1u));
      x16.push_back(f16.embed_bit((i >> b) & 1u));
    }
    CHECK(eval_bool_poly(f2, all, x2) == f2.one());
    CHECK(eval_bool_poly(f16, all, x16) == f16.one());
  }
}

TEST_CASE("lifting and parsing are deterministic") {
  ArithmeticCircuit c1 = parse_circuit(kFourFactor);
  ArithmeticCircuit c2 = parse_circuit(kFourFactor);
  PrimeField big(PrimeField::kDefaultPrime);
  std::mt19937_64 rng(415);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Fe> x;
    for (int i = 0; i < 5; ++i) x.push_back(big.from_u64(rng()));
    CHECK(eval_circuit(big, c1, x) == eval_circuit(big, c2, x));
  }

  for (unsigned fn : {37u, 106u, 240u}) {
    std::vector<bool> table(8);
    for (unsigned i = 0; i < 8; ++i) table[i] = (fn >> i) & 1u;
    BooleanPolynomial a = bool_to_poly(table);
    BooleanPolynomial b = bool_to_poly(table);
    CHECK(a.terms == b.terms);
    CHECK(a.constant_one == b.constant_one);
  }
}

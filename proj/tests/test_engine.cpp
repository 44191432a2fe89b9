// test_engine.cpp

#include <doctest.h>

#include "klq/affine.hpp"
#include "klq/oracle.hpp"
#include "test_util.hpp"

using namespace klq;
using namespace klq::testutil;

TEST_CASE("single generator target") {
  ElementPool pool(type_a(1));
  const KLResult r = compute_target(pool, Word{0});
  REQUIRE(r.entries.size() == 2);
  CHECK(r.entries[0].p == std::vector<BigInt>{1});
  CHECK(r.entries[1].p == std::vector<BigInt>{1});
  CHECK(r.mu_of(Word{}) == 1);
  CHECK(r.stats.counters.corrections == 0);
}

TEST_CASE("identity target") {
  ElementPool pool(type_a(2, {0, 1}));  // W^J = {e}
  const KLResult r = compute_target(pool, Word{});
  REQUIRE(r.entries.size() == 1);
  CHECK(r.entries[0].length == 0);
  CHECK(r.entries[0].p == std::vector<BigInt>{1});
}

TEST_CASE("classical S4 target") {
  ElementPool pool(type_a(3));
  const KLResult r = compute_target(pool, Word{1, 0, 2, 1});
  const std::vector<BigInt> one_plus_q{1, 1};
  CHECK(r.entry_for(Word{})->p == one_plus_q);
  CHECK(r.entry_for(Word{1})->p == one_plus_q);
  CHECK(r.entry_for(Word{0, 2})->p == std::vector<BigInt>{1});
}

TEST_CASE("input validation") {
  ElementPool pool(type_a(2, {0}));
  CHECK_THROWS_AS(compute_target(pool, Word{1, 1}), Error);  // not reduced
  CHECK_THROWS_AS(compute_target(pool, Word{0}), Error);     // not a rep
  ElementPool free(type_a(2));
  CHECK_THROWS_AS(compute_target(free, Word{7}), Error);     // bad generator
}

TEST_CASE("offender scan") {
  ElementPool pool(type_a(2));
  const ElemId e = pool.identity_id();
  const ElemId s1 = pool.intern_word(Word{0});
  const ElemId s2 = pool.intern_word(Word{1});
  const ElemId y = pool.intern_word(Word{0, 1});

  ModuleVector clean;
  clean.set(y, LaurentPoly(1));
  clean.set(e, LaurentPoly::monomial(1, -2));
  CHECK(find_offenders(pool, clean, y).empty());

  ModuleVector dirty = clean;
  dirty.set(e, LaurentPoly(1).times_t_plus_tinv());
  CHECK(find_offenders(pool, dirty, y) == std::vector<ElemId>{e});

  // Maximality: offenders at lengths 0 and 1 report only length 1,
  // ordered by canonical word.
  dirty.set(s2, LaurentPoly(3));
  dirty.set(s1, LaurentPoly::monomial(2, 2));
  const auto off = find_offenders(pool, dirty, y);
  CHECK(off == std::vector<ElemId>{s1, s2});
}

TEST_CASE("engine equals oracle including parabolic quotients") {
  for (CoxeterSystem base : {type_a(3), b2(), g2()}) {
    for (int mask : all_subsets(base.rank)) {
      const CoxeterSystem sys = with_J(base, mask_to_J(mask));
      const CompareReport rep = compare_system(sys);
      CHECK_MESSAGE(rep.equal, rep.divergence);
    }
  }
}

TEST_CASE("affine target with corrections") {
  // n=2, p=3: long enough words produce actual correction waves.
  ElementPool pool(affine_system(2));
  for (ElemId y : enumerate_quotient(pool, 6)) {
    EngineOptions opt;
    opt.verify = 2;
    const KLResult r = compute_target(pool, pool.word(y), opt);
    ModuleVector back = result_to_vector(pool, r);
    CHECK(find_offenders(pool, back, y).empty());
    std::string why;
    CHECK_MESSAGE(is_final_state(pool, back, y, &why), why);
  }
}

TEST_CASE("waves strictly decrease in length and stats are coherent") {
  ElementPool pool(affine_system(3));
  const AffineReport rep = run_case(pool, 3, 4, Weight{{1, 2, 1}});
  const KLResult& r = rep.result;
  CHECK(r.stats.counters.waves == r.stats.wave_log.size());
  for (std::size_t i = 1; i < r.stats.wave_log.size(); ++i)
    CHECK(r.stats.wave_log[i].length < r.stats.wave_log[i - 1].length);
  CHECK(r.stats.counters.peak_support >= r.entries.size());
}

TEST_CASE("schedule independence") {
  // Identical results with 1 worker (serial reference) and 8 workers.
  Word target;
  {
    ElementPool scout(affine_system(3));
    target = scout.word(enumerate_quotient(scout, 7).back());
  }
  REQUIRE(target.size() == 7);
  ElementPool pool1(affine_system(3));
  ElementPool pool8(affine_system(3));
  EngineOptions o1, o8;
  o1.threads = 1;
  o8.threads = 8;
  const KLResult r1 = compute_target(pool1, target, o1);
  const KLResult r8 = compute_target(pool8, target, o8);
  CHECK(r1.same_values(r8));
  CHECK(r1.stats.counters.corrections == r8.stats.counters.corrections);
  CHECK(r1.stats.counters.waves == r8.stats.counters.waves);
}

TEST_CASE("idempotence: a finished vector has no offenders") {
  ElementPool pool(type_a(3));
  BasisTable t = build_table(pool, 0);
  for (ElemId y : t.order)
    CHECK(find_offenders(pool, t.table.at(y), y).empty());
}

TEST_CASE("memory contract on a small affine case") {
  ElementPool pool(affine_system(2));
  const Word target = pool.word(enumerate_quotient(pool, 6).back());
  ModuleVector::reset_peak();
  EngineOptions opt;
  opt.threads = 4;
  const KLResult r = compute_target(pool, target, opt);
  CHECK(r.stats.cache_entries == 0);
  for (const WaveStat& w : r.stats.wave_log) {
    // One working vector plus at most the wave's correction vectors.
    CHECK(w.peak_live <= 1 + static_cast<long>(w.size));
  }
}

TEST_CASE("product cache changes nothing but the stats") {
  ElementPool pa(affine_system(2)), pb(affine_system(2));
  const Word target = pa.word(enumerate_quotient(pa, 6).back());
  EngineOptions plain, cached;
  cached.use_cache = true;
  cached.cache_capacity = 64;
  const KLResult ra = compute_target(pa, target, plain);
  const KLResult rb = compute_target(pb, target, cached);
  CHECK(ra.same_values(rb));
  CHECK(ra.stats.cache_entries == 0);
}

TEST_CASE("progress callback can interrupt") {
  ElementPool pool(affine_system(2));
  const Word target = pool.word(enumerate_quotient(pool, 6).back());
  EngineOptions opt;
  opt.progress = [](const EngineProgress&) { return false; };
  try {
    compute_target(pool, target, opt);
    FAIL("expected an interrupt");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::interrupted);
  }
}

TEST_CASE("the computed basis element is independent of the input word") {
  // Exhaustive in S4: every reduced word of every y yields the same final
  // result, even though the intermediate products differ per word.
  const CoxeterSystem a3 = type_a(3);
  ElementPool pool(a3);
  for (const GroupElement& y : enumerate_group(a3)) {
    const auto words = all_reduced_words(a3, y);
    REQUIRE(!words.empty());
    const KLResult ref = compute_target(pool, words.front());
    for (std::size_t i = 1; i < words.size(); ++i)
      CHECK(compute_target(pool, words[i]).same_values(ref));
  }
}

TEST_CASE("result reconstruction round trip") {
  ElementPool pool(type_a(3, {1}));
  for (ElemId y : enumerate_quotient(pool, 0)) {
    const KLResult r = compute_target(pool, pool.word(y));
    ModuleVector v = result_to_vector(pool, r);
    const KLResult r2 = extract_result(pool, v, pool.intern_word(r.y_word));
    CHECK(r.same_values(r2));
  }
}

#include <benchmark/benchmark.h>

#include <memory>

#include "formring/form_ideal.hpp"
#include "formring/group.hpp"
#include "formring/gu_level.hpp"
#include "formring/unitary.hpp"

using namespace formring;

namespace {

FormRing zmod_form_ring(int m, Elem lambda) {
  auto r = std::make_shared<const InvolutiveRing>(InvolutiveRing::zmod(m));
  return make_form_ring(r, lambda, r->all());
}

const FormIdeal kZ4Q{Ideal{Subset{0, 2}}, Subset{0, 2}};

void BM_MatrixProduct(benchmark::State& state) {
  UnitarySpace space(zmod_form_ring(4, 3), 3);
  const auto gens = space.fu_generators(absolute_form_ideal(space.form_ring()));
  const auto words = random_word_sampler(space, gens, 64, 20, 1);
  std::size_t i = 0;
  UMatrix acc = words[0];
  for (auto _ : state) {
    acc = space.mul(acc, words[i++ % words.size()]);
    benchmark::DoNotOptimize(acc);
  }
}
BENCHMARK(BM_MatrixProduct);

// |Sp(2n, 2)| for n = 2, 3
void BM_ClosureSymplecticF2(benchmark::State& state) {
  UnitarySpace space(zmod_form_ring(2, 1), static_cast<int>(state.range(0)));
  const auto gens = space.fu_generators(absolute_form_ideal(space.form_ring()));
  for (auto _ : state) {
    const SubgroupHandle h = closure_enumerate(space, gens, 1u << 22);
    benchmark::DoNotOptimize(h.size());
    state.counters["elements"] = static_cast<double>(h.size());
  }
}
BENCHMARK(BM_ClosureSymplecticF2)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_NormalClosureZ4(benchmark::State& state) {
  UnitarySpace space(zmod_form_ring(4, 3), 3);
  const auto target = space.fu_generators(kZ4Q);
  const auto ambient = space.fu_generators(absolute_form_ideal(space.form_ring()));
  for (auto _ : state) {
    const SubgroupHandle h = normal_closure(space, target, ambient, 1u << 22);
    state.counters["elements"] = static_cast<double>(h.size());
  }
}
BENCHMARK(BM_NormalClosureZ4)->Unit(benchmark::kMillisecond);

void BM_LayerSubgroupZ4(benchmark::State& state) {
  UnitarySpace space(zmod_form_ring(4, 3), 3);
  for (auto _ : state) {
    const SubgroupHandle h = gu_level_subgroup(space, kZ4Q, LevelMode::layer, 1u << 22);
    state.counters["elements"] = static_cast<double>(h.size());
  }
}
BENCHMARK(BM_LayerSubgroupZ4)->Unit(benchmark::kMillisecond);

void BM_CongruenceMembership(benchmark::State& state) {
  UnitarySpace space(zmod_form_ring(4, 3), 3);
  const auto gens = space.fu_generators(kZ4Q);
  const auto words = random_word_sampler(space, gens, 12, 256, 3);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(space.congruence_membership(kZ4Q, words[i++ % words.size()]));
  }
}
BENCHMARK(BM_CongruenceMembership);

}  // namespace

BENCHMARK_MAIN();

#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "slicesim/slice_pool.hpp"

using namespace slicesim;
using slicesim::testing::chain;

TEST_CASE("init_pool: tp=[4,3,2,1], alpha=1 gives r=10 with the documented ranges") {
  const auto pool = UpfPool::init(compute_task_priorities(chain(4)), 1, 2.0);
  REQUIRE(pool.size() == 10);
  REQUIRE(pool.num_slices() == 4);
  CHECK(pool.range(1).first == 1);
  CHECK(pool.range(1).last == 4);
  CHECK(pool.range(2).first == 5);
  CHECK(pool.range(2).last == 7);
  CHECK(pool.range(3).first == 8);
  CHECK(pool.range(3).last == 9);
  CHECK(pool.range(4).first == 10);
  CHECK(pool.range(4).last == 10);
  for (int j = 1; j <= 10; ++j) CHECK(pool.upf(j).idle());
}

TEST_CASE("init_pool: degenerate and scaled cases") {
  const auto single = UpfPool::init({{1, 1}}, 1, 2.0);
  CHECK(single.size() == 1);
  CHECK(single.range(1).first == 1);
  CHECK(single.range(1).last == 1);

  const auto scaled = UpfPool::init(compute_task_priorities(chain(2)), 3, 2.0);
  CHECK(scaled.size() == 9);
  CHECK(scaled.range(1).first == 1);
  CHECK(scaled.range(1).last == 6);
  CHECK(scaled.range(2).first == 7);
  CHECK(scaled.range(2).last == 9);
}

TEST_CASE("acquire picks the lowest-id idle UPF of the home range") {
  auto pool = UpfPool::init(compute_task_priorities(chain(4)), 1, 2.0);
  Upf* u = pool.acquire(1);
  REQUIRE(u);
  CHECK(u->id == 1);
  CHECK(u->current_slice == 1);
  CHECK_FALSE(u->elevated);

  pool.acquire(1);
  pool.acquire(1);
  pool.acquire(1);
  CHECK(pool.acquire(1) == nullptr);  // range [1,4] exhausted

  // releasing 3 makes it the next acquisition
  pool.upf(3).attached_ues.clear();
  pool.release_idle(1);
  // release drops every empty UPF in the slice; re-acquire them and check order
  Upf* again = pool.acquire(1);
  REQUIRE(again);
  CHECK(again->id == 1);
}

TEST_CASE("elevate scans lower-priority ranges in order") {
  auto pool = UpfPool::init(compute_task_priorities(chain(4)), 1, 2.0);
  for (int i = 0; i < 4; ++i) {
    Upf* u = pool.acquire(1);
    u->attached_ues.insert(100 + i);  // keep them busy
  }
  Upf* e = pool.elevate(1);
  REQUIRE(e);
  CHECK(e->id == 5);  // nearest lower range first
  CHECK(e->elevated);
  CHECK(e->current_slice == 1);
  CHECK(e->home_slice == 2);

  SUBCASE("lowest-priority slice has no lower range") {
    pool.acquire(4)->attached_ues.insert(1);
    CHECK(pool.elevate(4) == nullptr);
  }
  SUBCASE("total exhaustion returns nullptr") {
    for (int k = 2; k <= 4; ++k) {
      while (Upf* u = pool.acquire(k)) u->attached_ues.insert(k * 10);
    }
    // slots 5..10 now busy except the one already elevated
    while (Upf* u = pool.elevate(1)) u->attached_ues.insert(1);
    CHECK(pool.elevate(1) == nullptr);
  }
}

TEST_CASE("release reverts elevated UPFs to their home range") {
  auto pool = UpfPool::init(compute_task_priorities(chain(4)), 1, 2.0);
  for (int i = 0; i < 4; ++i) pool.acquire(1)->attached_ues.insert(i);
  Upf* e = pool.elevate(1);
  e->attached_ues.insert(99);

  e->attached_ues.erase(99);  // last UE detaches
  const auto released = pool.release_idle(1);
  REQUIRE(released.size() == 1);
  CHECK(released[0] == 5);
  CHECK(pool.upf(5).idle());
  CHECK_FALSE(pool.upf(5).elevated);
  CHECK(pool.upf(5).home_slice == 2);

  CHECK(pool.release_idle(2).empty());
}

TEST_CASE("release returns ids ascending") {
  auto pool = UpfPool::init(compute_task_priorities(chain(4)), 1, 2.0);
  pool.acquire(1);
  pool.acquire(1);
  const auto released = pool.release_idle(1);
  REQUIRE(released.size() == 2);
  CHECK(released[0] == 1);
  CHECK(released[1] == 2);
}

TEST_CASE("randomized operation fuzzing preserves conservation") {
  std::mt19937_64 rng(11);
  auto pool = UpfPool::init(compute_task_priorities(chain(4)), 1, 2.0);
  const int r = pool.size();
  std::uniform_int_distribution<int> slice(1, pool.num_slices());
  std::uniform_int_distribution<int> op(0, 3);
  int next_ue = 1;

  for (int step = 0; step < 2000; ++step) {
    const int k = slice(rng);
    switch (op(rng)) {
      case 0:
        if (Upf* u = pool.acquire(k)) u->attached_ues.insert(next_ue++);
        break;
      case 1:
        if (Upf* u = pool.elevate(k)) u->attached_ues.insert(next_ue++);
        break;
      case 2: {
        // detach one UE somewhere in the slice
        for (int j : pool.active_in_slice(k)) {
          auto& ues = pool.upf(j).attached_ues;
          if (!ues.empty()) {
            ues.erase(ues.begin());
            break;
          }
        }
        break;
      }
      case 3:
        pool.release_idle(k);
        break;
    }
    int idle = 0;
    int active = 0;
    for (int j = 1; j <= r; ++j) {
      const Upf& u = pool.upf(j);
      if (u.idle()) {
        ++idle;
        CHECK_FALSE(u.elevated);
      } else {
        ++active;
        // elevation only points to a higher-priority (lower-index) slice
        CHECK(u.elevated == (*u.current_slice != u.home_slice));
        CHECK(*u.current_slice <= u.home_slice);
      }
    }
    CHECK(idle + active == r);
  }
}

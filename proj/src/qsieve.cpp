#include <qp/qsieve.hpp>

#include <qp/primality.hpp>
#include <qp/sqrtmod.hpp>

#include <algorithm>
#include <cmath>
#include <condition_variable>
#include <mutex>
#include <stdexcept>
#include <thread>

namespace qp {

std::uint64_t max_k_for(std::uint64_t x) {
    if (x < 5) return 0;
    // floor(sqrt((x-1)/4)) with an exact integer correction step; the
    // q value is formed in 128 bits so x near 2^64 cannot wrap.
    auto q_of = [](std::uint64_t k) {
        return 4 * static_cast<unsigned __int128>(k) * k + 1;
    };
    std::uint64_t k = static_cast<std::uint64_t>(std::sqrt((x - 1) / 4.0));
    while (q_of(k + 1) <= x) ++k;
    while (k > 0 && q_of(k) > x) --k;
    return k;
}

SieveSegment sieve_segment(std::uint64_t k_lo, std::uint64_t k_hi,
                           const std::vector<std::uint32_t>& primes) {
    if (k_lo < 1 || k_lo >= k_hi)
        throw std::invalid_argument("sieve_segment: need 1 <= k_lo < k_hi");
    if (!std::is_sorted(primes.begin(), primes.end()))
        throw std::invalid_argument("sieve_segment: prime list must be ascending");

    SieveSegment seg;
    seg.k_lo = k_lo;
    seg.k_hi = k_hi;
    seg.sieve_bound = primes.empty() ? 0 : primes.back();
    seg.survivor.assign(k_hi - k_lo, true);

    for (std::uint32_t p : primes) {
        if (p % 4 != 1) continue;  // p=2 and p==3 (mod 4) divide no 4k^2+1
        const auto roots = root_of_minus_one(p);
        // k with 4k^2+1 == p itself must stay; for p == 4c^2+1 that k is c.
        std::uint64_t self_k = 0;
        const std::uint64_t c = static_cast<std::uint64_t>(std::sqrt((p - 1) / 4.0));
        if (4 * c * c + 1 == p) self_k = c;
        for (std::uint64_t u : {roots->first, roots->second}) {
            std::uint64_t k = k_lo + (u + p - k_lo % p) % p;
            for (; k < k_hi; k += p) {
                if (k == self_k) continue;
                seg.survivor[k - k_lo] = false;
            }
            if (roots->first == roots->second) break;
        }
    }
    return seg;
}

namespace {

std::uint32_t default_sieve_bound(std::uint64_t k_hi) {
    const std::uint64_t b =
        2 * static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(k_hi))));
    return static_cast<std::uint32_t>(std::min<std::uint64_t>(b, 1u << 20));
}

std::vector<std::uint64_t> scan_segment(std::uint64_t k_lo, std::uint64_t k_hi,
                                        const std::vector<std::uint32_t>& primes) {
    std::vector<std::uint64_t> hits;
    const SieveSegment seg = sieve_segment(k_lo, k_hi, primes);
    for (std::uint64_t k = k_lo; k < k_hi; ++k) {
        if (!seg.survives(k)) continue;
        if (is_prime(4 * k * k + 1)) hits.push_back(k);
    }
    return hits;
}

} // namespace

EnumerateSummary enumerate_qprimes(std::uint64_t x_max, const EventSink& sink,
                                   const EnumerateOptions& opts) {
    EnumerateSummary sum;
    if (x_max < 2) return sum;

    sink(make_event(0));  // q = 2
    sum.count = 1;

    const std::uint64_t k_max = max_k_for(x_max);
    sum.k_scanned = k_max;
    if (k_max == 0) return sum;

    const std::uint64_t seg_size = std::max<std::uint64_t>(opts.segment_size, 1);
    const std::uint32_t bound =
        opts.sieve_bound ? opts.sieve_bound : default_sieve_bound(k_max + 1);
    const std::vector<std::uint32_t> primes = primes_up_to(bound);

    const std::uint64_t n_segments = (k_max + seg_size - 1) / seg_size;
    const unsigned threads =
        std::max(1u, std::min<unsigned>(opts.threads, static_cast<unsigned>(n_segments)));

    auto seg_range = [&](std::uint64_t i) {
        const std::uint64_t lo = 1 + i * seg_size;
        const std::uint64_t hi = std::min(k_max + 1, lo + seg_size);
        return std::pair{lo, hi};
    };

    auto emit = [&](const std::vector<std::uint64_t>& ks) {
        for (std::uint64_t k : ks) {
            sink(make_event(k));
            ++sum.count;
            sum.k_last = k;
        }
    };

    if (threads == 1) {
        for (std::uint64_t i = 0; i < n_segments; ++i) {
            const auto [lo, hi] = seg_range(i);
            emit(scan_segment(lo, hi, primes));
        }
        return sum;
    }

    // Workers claim segment indices; results are emitted strictly in
    // segment order so the stream is identical to the sequential one.
    std::mutex mu;
    std::condition_variable cv;
    std::uint64_t next_claim = 0;
    std::uint64_t next_emit = 0;
    std::vector<std::pair<bool, std::vector<std::uint64_t>>> done(n_segments);
    std::exception_ptr failure;

    auto worker = [&] {
        for (;;) {
            std::uint64_t i;
            {
                std::lock_guard lock(mu);
                if (failure || next_claim >= n_segments) return;
                i = next_claim++;
            }
            try {
                const auto [lo, hi] = seg_range(i);
                auto ks = scan_segment(lo, hi, primes);
                std::lock_guard lock(mu);
                done[i] = {true, std::move(ks)};
                cv.notify_all();
            } catch (...) {
                std::lock_guard lock(mu);
                failure = std::current_exception();
                cv.notify_all();
                return;
            }
        }
    };

    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);

    {
        std::unique_lock lock(mu);
        while (next_emit < n_segments) {
            cv.wait(lock, [&] { return failure || done[next_emit].first; });
            if (failure) break;
            auto ks = std::move(done[next_emit].second);
            done[next_emit] = {};
            ++next_emit;
            lock.unlock();
            emit(ks);
            lock.lock();
        }
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    return sum;
}

} // namespace qp

#include "contmean/reduction.hpp"

namespace contmean {

double deterministic_chunked_sum(std::size_t count, std::size_t chunk_size, int threads,
                                 const std::function<double(std::size_t, std::size_t)>& body) {
    if (count == 0) return 0.0;
    if (chunk_size == 0) chunk_size = 1;
    std::size_t chunks = (count + chunk_size - 1) / chunk_size;
    std::vector<double> partial(chunks, 0.0);

    int workers = resolve_threads(threads);
    if (workers > static_cast<int>(chunks)) workers = static_cast<int>(chunks);

    auto run_chunk = [&](std::size_t c) {
        std::size_t begin = c * chunk_size;
        std::size_t end = std::min(count, begin + chunk_size);
        partial[c] = body(begin, end);
    };

    if (workers <= 1) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (;;) {
                    std::size_t c = next.fetch_add(1);
                    if (c >= chunks) break;
                    run_chunk(c);
                }
            });
        }
        for (auto& t : pool) t.join();
    }

    CompensatedSum total;
    for (double p : partial) total.add(p);
    return total.value();
}

}  // namespace contmean

#include <catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <random>

#include "mathar/oeis_client.hpp"
#include "oracles.hpp"

using namespace mathar;

// Talks to oeis.org; runs only with MATHAR_LIVE_FETCH=1.
TEST_CASE("live fetch of A001711", "[fetch][live]") {
    const char* flag = std::getenv("MATHAR_LIVE_FETCH");
    if (flag == nullptr || std::string(flag) != "1") {
        SKIP("set MATHAR_LIVE_FETCH=1 to run");
    }
    std::random_device rd;
    const auto dir = std::filesystem::temp_directory_path() / ("mathar-live-" + std::to_string(rd()));
    const auto b = fetch_bfile("A001711", dir, false, std::chrono::seconds(30));
    REQUIRE(b.entries.size() >= 20);
    for (std::size_t n = 0; n < 20; ++n) {
        CHECK(b.entries[n].second == oracle::closed_form_direct(n).get_num());
    }
    const auto again = fetch_bfile("A001711", dir, true);
    CHECK(again == b);
    std::filesystem::remove_all(dir);
}

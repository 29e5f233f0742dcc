#include <doctest.h>

#include "vppsim/coin.hpp"

#include <limits>
#include <stdexcept>

using namespace vppsim;

TEST_CASE("coin construction and formatting") {
    CHECK_EQ(coins(1), 1'000'000);
    CHECK_EQ(coins(500), 500'000'000);
    CHECK_EQ(coin_format(coins(500)), "500.000000");
    CHECK_EQ(coin_format(1), "0.000001");
    CHECK_EQ(coin_format(-1'500'000), "-1.500000");
    CHECK_EQ(coin_format(0), "0.000000");
}

TEST_CASE("coin parsing") {
    CHECK_EQ(coin_parse("500"), coins(500));
    CHECK_EQ(coin_parse("0.000001"), 1);
    CHECK_EQ(coin_parse("-1.5"), -1'500'000);
    CHECK_EQ(coin_parse("2.25"), 2'250'000);
    CHECK_THROWS_AS(coin_parse("1.0000001"), std::invalid_argument); // sub-micro precision
    CHECK_THROWS_AS(coin_parse("abc"), std::invalid_argument);
    CHECK_THROWS_AS(coin_parse(""), std::invalid_argument);
}

TEST_CASE("parse-format roundtrip") {
    for (Coin c : {Coin{0}, Coin{1}, Coin{-1}, coins(3) + 141'592, coins(-27) - 1, coins(1'000'000)})
        CHECK_EQ(coin_parse(coin_format(c)), c);
}

TEST_CASE("double conversion rounds to the nearest micro-coin") {
    CHECK_EQ(coin_from_double(1.2345678), 1'234'568); // .8 of a micro rounds up
    CHECK_EQ(coin_from_double(-1.2345678), -1'234'568);
    CHECK_EQ(coin_from_double(1.2345671), 1'234'567);
    CHECK_EQ(coin_from_double(2.5), 2'500'000);
    CHECK_EQ(coin_to_double(coins(2)), doctest::Approx(2.0));
    CHECK_THROWS_AS(coin_from_double(1e19), std::invalid_argument);
    CHECK_THROWS_AS(coin_from_double(std::numeric_limits<double>::quiet_NaN()), std::invalid_argument);
}

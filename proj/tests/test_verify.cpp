#include <doctest.h>
#include "lmscat/common.hpp"
TEST_CASE("placeholder") { CHECK(true); }

#include "lmscat/common.hpp"

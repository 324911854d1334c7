#include "rational.hpp"

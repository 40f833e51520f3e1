#pragma once

#include "pmcanon/canonicity.hpp"
#include "pmcanon/codec.hpp"
#include "pmcanon/enumeration.hpp"
#include "pmcanon/equivalence.hpp"
#include "pmcanon/errors.hpp"
#include "pmcanon/matrix.hpp"
#include "pmcanon/structured.hpp"

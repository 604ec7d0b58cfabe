#pragma once

#include "listacc/core_list.hpp"
#include "listacc/error.hpp"
#include "listacc/predictors.hpp"
#include "listacc/rng.hpp"
#include "listacc/taxonomy.hpp"

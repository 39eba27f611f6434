#pragma once

#include "lehmer/arith.hpp"
#include "lehmer/certifier.hpp"
#include "lehmer/diophantine.hpp"
#include "lehmer/elliptic.hpp"
#include "lehmer/lucas.hpp"
#include "lehmer/newform.hpp"
#include "lehmer/reproduce.hpp"
#include "lehmer/sources.hpp"
#include "lehmer/tables.hpp"
#include "lehmer/theorems.hpp"
#include "lehmer/resources.hpp"

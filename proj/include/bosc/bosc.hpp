#ifndef BOSC_BOSC_HPP
#define BOSC_BOSC_HPP

#include "bosc/decide.hpp"
#include "bosc/dyck.hpp"
#include "bosc/error.hpp"
#include "bosc/grammars.hpp"
#include "bosc/kconstruct.hpp"
#include "bosc/pda.hpp"
#include "bosc/trees.hpp"

#endif

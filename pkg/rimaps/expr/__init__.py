from rimaps.expr.Expression import Binary
from rimaps.expr.Expression import Constant
from rimaps.expr.Expression import Coordinate
from rimaps.expr.Expression import Expression
from rimaps.expr.Expression import Unary
from rimaps.expr.ExpressionParser import ExpressionParser
from rimaps.expr.Jet2 import Jet2

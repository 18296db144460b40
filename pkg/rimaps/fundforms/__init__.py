from rimaps.fundforms.DistributionGeometry import DistributionGeometry
from rimaps.fundforms.FundamentalForms import FundamentalForms
from rimaps.fundforms.SecondFundamentalFormMap import SecondFundamentalFormMap
from rimaps.fundforms.ShapeOperator import ShapeOperator

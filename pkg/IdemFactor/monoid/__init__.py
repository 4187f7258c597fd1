from .preorder import FiniteMonoid, PreorderView, HeightTable

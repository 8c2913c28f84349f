"""kpzlab : laboratoire numérique pour la classe d'universalité KPZ (TASEP, DLPP, Tracy-Widom)."""

__version__ = "0.1.0"

import multiseg.exceptions
import multiseg.segments
import multiseg.multisegments
import multiseg.relevance
import multiseg.ladders
import multiseg.irreducibility
import multiseg.search
import multiseg.flattener

__version__ = '0.1.0'
